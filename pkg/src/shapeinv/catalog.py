"""Concrete potentials and the two fully worked shape-invariant models.

The Morse and Poeschl-Teller-I entries come with superpotential, parameter
rule, remainder and ground energy, so the whole algebraic pipeline applies.
Coulomb/Kratzer/Hulthen are exposed as bare potentials: the package treats
them through coordinate maps (see pct), not by direct factorization.
"""
from __future__ import annotations

import math

import numpy as np

from .core import (
    DomainSpec,
    Grid,
    ParameterRule,
    Potential,
    RemainderSequence,
    ShapeInvariantModel,
    Superpotential,
)
from .errors import NoBoundStateError, UnsupportedParameterError

__all__ = [
    "make_morse",
    "make_pt1",
    "make_coulomb_effective",
    "make_kratzer",
    "make_hulthen",
    "morse_remainder_variant",
    "coulomb_effective_levels",
    "kratzer_levels",
    "hulthen_levels",
    "build_by_name",
    "default_grid",
    "oracle_grid",
    "QUOTED_ALGEBRA_SCALES",
    "CATALOG",
]


def make_morse(b: float) -> ShapeInvariantModel:
    """Morse potential V(z) = exp(-2z) - 2b exp(-z) on the full line.

    Factorizes with W(z, a) = a - exp(-z).  Matching the exp(-z) coefficient
    of W^2 - W' to -2b fixes a0 = b - 1/2 and e0 = -(b - 1/2)^2, and the
    shape-invariance step a -> a - 1 carries remainder r(a) = 2a + 1, giving
    the familiar levels E_n = -(b - n - 1/2)^2 while a_n > 0.
    """
    if b <= 0.5:
        raise NoBoundStateError(f"morse needs b > 1/2 for a bound state, got b = {b}")
    a0 = b - 0.5
    dom = DomainSpec.full_line()

    sp = Superpotential(
        w=lambda z, a: a - np.exp(-z),
        w_prime=lambda z, a: np.exp(-z),
        domain=dom,
        w_integral=lambda z, a: a * z + np.exp(-z),
    )
    rule = ParameterRule(ParameterRule.TRANSLATION, a0=a0, step=-1.0)
    rem = RemainderSequence(r=lambda a: 2.0 * a + 1.0, rule=rule)
    pot = Potential(
        evaluator=lambda z: np.exp(-2 * z) - 2 * b * np.exp(-z),
        domain=dom,
        params={"b": b},
        label=f"morse(b={b:g}); r(a)=2a+1 [variant 2(a-1) rejected, see tests]",
    )
    # levels exist while a_n = a0 - n > 0
    cap = int(math.ceil(a0)) - 1
    return ShapeInvariantModel(
        superpotential=sp, rule=rule, remainder=rem, e0=-(a0 ** 2), potential=pot,
        level_cap=cap,
    )


def morse_remainder_variant(a: float) -> float:
    """The variant Morse remainder 2(a - 1) occasionally quoted for
    W = a - exp(-z).

    It has the right level spacing (-2 per step) but does not factorize the
    Morse Hamiltonian: its partial sums disagree with the finite-difference
    eigensolver.  Kept so the tests can demonstrate the rejection.
    """
    return 2.0 * (a - 1.0)


def make_pt1(A: float, B: float) -> ShapeInvariantModel:
    """Trigonometric Poeschl-Teller potential
    V(z) = -(A+B)^2 + A(A-1) sec^2 z + B(B-1) csc^2 z on (0, pi/2).

    W(z) = A tan z - B cot z reproduces V exactly as W^2 - W' (so e0 = 0);
    the shape-invariance step raises A and B by one each.  The single chain
    parameter is a = A + B with step 2 and remainder r(a) = 4(a - 1), giving
    E_n = (A + B + 2n)^2 - (A + B)^2.
    """
    if A <= 1 or B <= 1:
        raise UnsupportedParameterError(
            f"pt1 needs A > 1 and B > 1 (repulsive walls), got A = {A}, B = {B}"
        )
    s0 = A + B
    dom = DomainSpec.open_interval(0.0, math.pi / 2)

    def _ab(a):
        t = (a - s0) / 2.0
        return A + t, B + t

    def w(z, a):
        Ak, Bk = _ab(a)
        return Ak * np.tan(z) - Bk / np.tan(z)

    def w_prime(z, a):
        Ak, Bk = _ab(a)
        return Ak / np.cos(z) ** 2 + Bk / np.sin(z) ** 2

    def w_integral(z, a):
        Ak, Bk = _ab(a)
        return -Ak * np.log(np.cos(z)) - Bk * np.log(np.sin(z))

    sp = Superpotential(w=w, w_prime=w_prime, domain=dom, w_integral=w_integral)
    rule = ParameterRule(ParameterRule.TRANSLATION, a0=s0, step=2.0)
    rem = RemainderSequence(r=lambda a: 4.0 * (a - 1.0), rule=rule)
    pot = Potential(
        evaluator=lambda z: -(A + B) ** 2
        + A * (A - 1) / np.cos(z) ** 2
        + B * (B - 1) / np.sin(z) ** 2,
        domain=dom,
        params={"A": A, "B": B},
        label=f"pt1(A={A:g},B={B:g})",
    )
    return ShapeInvariantModel(
        superpotential=sp, rule=rule, remainder=rem, e0=0.0, potential=pot,
        level_cap=None,
    )


def make_coulomb_effective(e2: float, l: int) -> Potential:
    """Radial Coulomb with centrifugal term and the constant shift that
    zeroes the ground level:

        V(x) = -e2/x + l(l+1)/x^2 + e2^2 / (4 (l+1)^2)   on x > 0.
    """
    if e2 <= 0:
        raise UnsupportedParameterError(f"coulomb needs e2 > 0, got {e2}")
    if l < 0 or int(l) != l:
        raise UnsupportedParameterError(f"coulomb needs integer l >= 0, got {l}")
    l = int(l)
    gamma = e2 ** 2 / (4.0 * (l + 1) ** 2)
    return Potential(
        evaluator=lambda x: -e2 / x + l * (l + 1) / x ** 2 + gamma,
        domain=DomainSpec.half_line(),
        params={"e2": e2, "l": l, "gamma": gamma},
        label=f"coulomb-effective(e2={e2:g},l={l})",
    )


def make_kratzer() -> Potential:
    """Kratzer potential V(x) = -1/x + 1/x^2 on the half line."""
    return Potential(
        evaluator=lambda x: -1.0 / x + 1.0 / x ** 2,
        domain=DomainSpec.half_line(),
        params={},
        label="kratzer",
    )


def make_hulthen(strength: float = 1.0) -> Potential:
    """Hulthen potential V(r) = -strength * exp(-r) / (1 - exp(-r)).

    strength defaults to 1, the canonical short-range form.  In these units
    that default has no strictly negative level, which would make oracle
    cross-checks vacuous, so tests use larger strengths (e.g. 12).
    """
    if strength <= 0:
        raise UnsupportedParameterError(f"hulthen needs strength > 0, got {strength}")
    return Potential(
        evaluator=lambda r: -strength * np.exp(-r) / (1.0 - np.exp(-r)),
        domain=DomainSpec.half_line(),
        params={"strength": strength},
        label=f"hulthen(strength={strength:g})",
    )


# ---------------------------------------------------------------------------
# Closed-form reference spectra (derived via the effective-angular-momentum
# reduction; each is confirmed against the finite-difference solver in tests).

def coulomb_effective_levels(e2: float, l: int, n_max: int) -> list:
    """E_n = (e2^2/4) (1/(l+1)^2 - 1/(n+l+1)^2), n = 0..n_max."""
    return [
        e2 ** 2 / 4.0 * (1.0 / (l + 1) ** 2 - 1.0 / (n + l + 1) ** 2)
        for n in range(n_max + 1)
    ]


def kratzer_levels(n_max: int) -> list:
    """Kratzer levels: l'(l'+1) = 1 gives l' = (sqrt5 - 1)/2, then
    E_n = -1 / (4 (n + l' + 1)^2)."""
    lp = (math.sqrt(5.0) - 1.0) / 2.0
    return [-1.0 / (4.0 * (n + lp + 1) ** 2) for n in range(n_max + 1)]


def hulthen_levels(strength: float) -> list:
    """E_n = -((strength - n^2) / (2n))^2 for integer n >= 1 with
    n^2 < strength; empty when there is no strictly negative level."""
    out = []
    n = 1
    while n * n < strength:
        out.append(-(((strength - n * n) / (2.0 * n)) ** 2))
        n += 1
    return out


# ---------------------------------------------------------------------------
# Name registry for the CLI and default grids.

CATALOG = {
    "morse": {
        "kind": "model",
        "build": lambda params: make_morse(b=float(params.get("b", 5.0))),
        "params": {"b": 5.0},
    },
    "pt1": {
        "kind": "model",
        "build": lambda params: make_pt1(
            A=float(params.get("A", 2.0)), B=float(params.get("B", 3.0))
        ),
        "params": {"A": 2.0, "B": 3.0},
    },
    "coulomb": {
        "kind": "potential",
        "build": lambda params: make_coulomb_effective(
            e2=float(params.get("e2", 1.0)), l=int(params.get("l", 0))
        ),
        "params": {"e2": 1.0, "l": 0},
    },
    "kratzer": {
        "kind": "potential",
        "build": lambda params: make_kratzer(),
        "params": {},
    },
    "hulthen": {
        "kind": "potential",
        "build": lambda params: make_hulthen(
            strength=float(params.get("strength", 1.0))
        ),
        "params": {"strength": 1.0},
    },
}

# Dimensionless ladder scale factors commonly quoted for these two models,
# as (k0_scale, kpm_scale).  The classifier derives its own factors and
# reports how these compare; see ladder.classify_algebra.
QUOTED_ALGEBRA_SCALES = {
    "morse": (0.25, 1.0 / math.sqrt(2.0)),
    "pt1": (-0.125, 0.5),
}

# Generation grids: wavefunction chains, residual checks, map transports.
# Calibrated so every shipped tolerance passes with margin; boundary nodes sit
# one spacing from the window walls.
_DEFAULT_WINDOWS = {
    "morse": (-4.0, 12.0, 16000),
    "pt1": (0.0, math.pi / 2, 6000),
    "coulomb": (0.0, 60.0, 8000),
    "kratzer": (0.0, 60.0, 8000),
    "hulthen": (0.0, 30.0, 8000),
}

# Oracle grids: wide and fine enough that the finite-difference levels meet
# the comparison tolerances used in the acceptance suite.
_ORACLE_WINDOWS = {
    "morse": (-4.0, 18.0, 60000),
    "pt1": (0.0, math.pi / 2, 4000),
    "coulomb": (0.0, 120.0, 16000),
    "kratzer": (0.0, 60.0, 8000),
    "hulthen": (0.0, 30.0, 16000),
}


def _window_grid(name: str, table: dict, n_override=None) -> Grid:
    if name not in table:
        raise KeyError(f"no default grid for {name!r}")
    lo, hi, n = table[name]
    if n_override is not None:
        n = int(n_override)
    entry = CATALOG[name]
    obj = entry["build"](entry["params"])
    domain = obj.potential.domain if entry["kind"] == "model" else obj.domain
    return Grid.open_window(domain, lo, hi, n)


def default_grid(name: str, n: int = None) -> Grid:
    """The recommended generation grid for a catalog entry."""
    return _window_grid(name, _DEFAULT_WINDOWS, n)


def oracle_grid(name: str, n: int = None) -> Grid:
    """The recommended finite-difference oracle grid for a catalog entry."""
    return _window_grid(name, _ORACLE_WINDOWS, n)


def build_by_name(name: str, **params):
    """Build a catalog entry from its CLI name; unknown names raise KeyError."""
    if name not in CATALOG:
        raise KeyError(
            f"unknown catalog entry {name!r}; known: {sorted(CATALOG)}"
        )
    entry = CATALOG[name]
    merged = dict(entry["params"])
    merged.update({k: v for k, v in params.items() if v is not None})
    return entry["build"](merged)
