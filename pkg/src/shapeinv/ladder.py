"""Finite truncations of the ladder operators B+/B- and their algebra.

In the bound eigenbasis the raising operator acts as
B+ |n> = sqrt(S_{n+1}) |n+1> with S_m = sum_{k=1..m} r(a_k), so the N x N
truncation is a single subdiagonal.  The commutator [B-, B+] is diagonal with
entries r(a_{n+1}) (the parameter-dressed remainder); identities built from
these matrices hold exactly on interior indices and fail, by construction,
on the last rows where the truncation cuts the tower.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import ShapeInvariantModel
from .errors import TruncationTooLargeError

__all__ = [
    "TruncatedLadderRep",
    "AlgebraReport",
    "build_rep",
    "commutator_residuals",
    "commutator_residual_details",
    "classify_algebra",
]

SU2 = "su(2)"
SU11 = "su(1,1)"
HEISENBERG = "heisenberg"
NON_CONSTANT = "non-constant-spacing"

_SPACING_TOL = 1e-12


@dataclass(frozen=True)
class TruncatedLadderRep:
    """N x N ladder matrices for one model.

    remainders holds r(a_1) .. r(a_{N+1}); rho is the diagonal dressed
    remainder, rho[n,n] = r(a_{n+1}) under the default convention.
    """

    n_dim: int
    b_plus: np.ndarray
    b_minus: np.ndarray
    rho: np.ndarray
    e0: float
    remainders: np.ndarray
    rho_convention: str = "raised"

    @property
    def hamiltonian(self) -> np.ndarray:
        return self.b_plus @ self.b_minus + self.e0 * np.eye(self.n_dim)


def build_rep(
    model: ShapeInvariantModel, n_dim: int, rho_convention: str = "raised"
) -> TruncatedLadderRep:
    """Build the truncation.  Requires every remainder increment r(a_k),
    k = 1..n_dim-1, to be positive: past that point the tower has ended and
    sqrt of a non-increasing sum has no place in a unitary truncation.

    rho_convention "raised" (default) sets rho[n,n] = r(a_{n+1}), the unique
    diagonal making [B-, B+] = rho exact on interior indices; "base" keeps
    the undressed rho[n,n] = r(a_n) for comparison.
    """
    if n_dim < 4:
        raise ValueError("n_dim must be >= 4")
    if rho_convention not in ("raised", "base"):
        raise ValueError(f"unknown rho convention {rho_convention!r}")
    rems = np.array([model.remainder.at_step(k) for k in range(1, n_dim + 2)])
    for k in range(1, n_dim):
        if rems[k - 1] <= 0:
            raise TruncationTooLargeError(
                f"truncation n_dim = {n_dim} leaves the bound tower: "
                f"r(a_{k}) = {rems[k - 1]:g} <= 0 at n = {k}"
            )
    sums = np.concatenate(([0.0], np.cumsum(rems)))  # sums[m] = S_m
    b_plus = np.zeros((n_dim, n_dim))
    for n in range(n_dim - 1):
        b_plus[n + 1, n] = np.sqrt(sums[n + 1])
    if rho_convention == "raised":
        rho = np.diag(rems[:n_dim])
    else:
        rho = np.diag(
            [model.remainder.at_step(k) for k in range(n_dim)]
        )
    return TruncatedLadderRep(
        n_dim=n_dim,
        b_plus=b_plus,
        b_minus=b_plus.T.copy(),
        rho=rho,
        e0=model.e0,
        remainders=rems,
        rho_convention=rho_convention,
    )


def _comm(a, b):
    return a @ b - b @ a


def _identity_matrices(rep: TruncatedLadderRep) -> dict:
    """The four commutator identities as residual matrices (zero when exact)."""
    n = rep.n_dim
    bp, bm, rho = rep.b_plus, rep.b_minus, rep.rho
    h = rep.hamiltonian
    # spacing pattern r(a_{n+2}) - r(a_{n+1}) indexed by column n
    pattern = np.diag(rep.remainders[1 : n + 1] - rep.remainders[0:n])
    return {
        "ladder_commutator": _comm(bm, bp) - rho,
        "hamiltonian_raising": _comm(h, bp) - bp @ rho,
        "remainder_shift": _comm(bp, rho) + bp @ pattern,
        "double_commutator": _comm(bp, _comm(bp, rho)),
    }


def _interior_max(m: np.ndarray) -> float:
    return float(np.abs(m[: m.shape[0] - 2, : m.shape[1] - 2]).max())


def _edge_max(m: np.ndarray) -> float:
    n = m.shape[0]
    mask = np.zeros_like(m, dtype=bool)
    mask[n - 2 :, :] = True
    mask[:, n - 2 :] = True
    return float(np.abs(m[mask]).max()) if mask.any() else 0.0


def commutator_residuals(rep: TruncatedLadderRep, edges: bool = False) -> float:
    """Max absolute entry of the four identity residuals.

    Interior indices (0 .. N-3) by default.  With edges=True the max runs
    over the last two rows/columns instead; those entries are O(r values),
    not small -- the truncation sees the missing tower there.
    """
    mats = _identity_matrices(rep)
    agg = _edge_max if edges else _interior_max
    return max(agg(m) for m in mats.values())


def commutator_residual_details(rep: TruncatedLadderRep) -> dict:
    """Per-identity interior and edge maxima."""
    mats = _identity_matrices(rep)
    return {
        name: {"interior": _interior_max(m), "edge": _edge_max(m)}
        for name, m in mats.items()
    }


@dataclass(frozen=True)
class AlgebraReport:
    """Outcome of the closure analysis of the dimensionless ladder algebra.

    K0 = k0_scale * rho and K+- = kpm_scale * B+- satisfy [K0, K+-] = +-K+-
    and [K+, K-] = closure_sign * 2 K0 on interior indices;
    closure_sign > 0 is the su(2) pattern (finite towers, decreasing
    remainder spacing), closure_sign < 0 is su(1,1) (unbounded towers).
    quoted_* report how externally quoted scale factors behave under the
    same test.
    """

    spacing_d: float
    classification: str
    k0_scale: Optional[float]
    kpm_scale: Optional[float]
    closure_sign: Optional[int]
    max_interior_residual: float
    edge_residual: float
    quoted_k0_scale: Optional[float] = None
    quoted_kpm_scale: Optional[float] = None
    quoted_residual: Optional[float] = None
    note: str = ""

    def to_json_obj(self) -> dict:
        return {
            "spacing_d": self.spacing_d,
            "classification": self.classification,
            "k0_scale": self.k0_scale,
            "kpm_scale": self.kpm_scale,
            "closure_sign": self.closure_sign,
            "max_interior_residual": self.max_interior_residual,
            "edge_residual": self.edge_residual,
            "quoted_k0_scale": self.quoted_k0_scale,
            "quoted_kpm_scale": self.quoted_kpm_scale,
            "quoted_residual": self.quoted_residual,
            "note": self.note,
        }


def _closure_residuals(rep, k0_scale, kpm_scale):
    """Interior residuals of the three closed relations for given scales.

    Returns (raising, lowering, best_commutator, sign): sign is +1 when
    [K+, K-] = +2 K0 fits better, -1 otherwise.
    """
    k0 = k0_scale * rep.rho
    kp = kpm_scale * rep.b_plus
    km = kpm_scale * rep.b_minus
    raising = _interior_max(_comm(k0, kp) - kp)
    lowering = _interior_max(_comm(k0, km) + km)
    pm = _comm(kp, km)
    plus = _interior_max(pm - 2.0 * k0)
    minus = _interior_max(pm + 2.0 * k0)
    if plus <= minus:
        return raising, lowering, plus, +1
    return raising, lowering, minus, -1


def classify_algebra(
    model: ShapeInvariantModel,
    n_dim: int,
    quoted_scales: Optional[tuple] = None,
) -> AlgebraReport:
    """Derive the scales closing the ladder algebra and classify it.

    With constant remainder spacing d != 0 the closing normalization is
    K0 = rho / d and K+- = sqrt(2/|d|) B+-; the sign of [K+, K-] against
    2 K0 then decides su(2) (+) versus su(1,1) (-).  d = 0 is the
    oscillator-like Heisenberg case; non-constant spacing is reported as
    such (no closure).  quoted_scales = (k0, kpm) adds a comparison run
    with externally quoted factors.
    """
    rep = build_rep(model, n_dim)
    details = commutator_residual_details(rep)
    edge = max(v["edge"] for v in details.values())

    spacings = rep.remainders[1 : n_dim + 1] - rep.remainders[0:n_dim]
    d = float(spacings[0])
    scale = max(1.0, float(np.abs(rep.remainders[: n_dim + 1]).max()))
    if np.max(np.abs(spacings - d)) > _SPACING_TOL * scale:
        return AlgebraReport(
            spacing_d=float("nan"),
            classification=NON_CONSTANT,
            k0_scale=None,
            kpm_scale=None,
            closure_sign=None,
            max_interior_residual=details["double_commutator"]["interior"],
            edge_residual=edge,
            note="remainder spacing varies along the orbit; no closed algebra",
        )
    if abs(d) <= _SPACING_TOL * scale:
        return AlgebraReport(
            spacing_d=0.0,
            classification=HEISENBERG,
            k0_scale=None,
            kpm_scale=None,
            closure_sign=None,
            max_interior_residual=details["ladder_commutator"]["interior"],
            edge_residual=edge,
            note="constant remainder: [B-, B+] is a multiple of the identity",
        )

    k0_scale = 1.0 / d
    kpm_scale = float(np.sqrt(2.0 / abs(d)))
    raising, lowering, best, sign = _closure_residuals(rep, k0_scale, kpm_scale)
    classification = SU2 if sign > 0 else SU11
    note = (
        f"closure [K+,K-] = {'+' if sign > 0 else '-'}2K0 with K0 = rho/({d:g}), "
        f"K+- = {kpm_scale:g} B+-"
    )

    quoted_k0 = quoted_kpm = quoted_res = None
    if quoted_scales is not None:
        quoted_k0, quoted_kpm = (float(q) for q in quoted_scales)
        q_raising, q_lowering, q_best, q_sign = _closure_residuals(
            rep, quoted_k0, quoted_kpm
        )
        quoted_res = max(q_raising, q_lowering, q_best)
        if quoted_res <= 1e-10 * scale:
            note += "; quoted factors close the same algebra"
        else:
            note += (
                f"; quoted factors (k0 {quoted_k0:g}, kpm {quoted_kpm:g}) do not "
                f"close: residual {quoted_res:.3g} "
                f"(raising {q_raising:.3g}, commutator {q_best:.3g})"
            )

    return AlgebraReport(
        spacing_d=d,
        classification=classification,
        k0_scale=k0_scale,
        kpm_scale=kpm_scale,
        closure_sign=sign,
        max_interior_residual=max(raising, lowering, best),
        edge_residual=edge,
        quoted_k0_scale=quoted_k0,
        quoted_kpm_scale=quoted_kpm,
        quoted_residual=quoted_res,
        note=note,
    )
