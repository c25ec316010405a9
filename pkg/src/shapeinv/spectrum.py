"""Algebraic spectra and wavefunction towers from a ShapeInvariantModel.

Energies are partial sums of the remainder along the parameter orbit.
Wavefunctions come from the factorization chain: the ground state is
exp(-int W), excited states are built by repeated application of
A^dag = W - d/dx with the algebraic normalizers.
"""
from __future__ import annotations

from dataclasses import replace
from typing import Optional

import numpy as np

from .core import (
    Grid,
    ParameterRule,
    Potential,
    ShapeInvariantModel,
    Spectrum,
    WaveFunction,
)
from .errors import LadderExhaustedError

__all__ = [
    "algebraic_levels",
    "ground_state",
    "raise_state",
    "shift_model",
    "ladder_states",
    "count_nodes",
    "central_difference",
]


def algebraic_levels(model: ShapeInvariantModel, n_max: int) -> Spectrum:
    """E_n = e0 + sum_{k=1..n} r(a_k) for n = 0..n_max.

    Finite towers are truncated: at the model's level_cap when one is set,
    and in any case before the first step whose remainder is non-positive
    (the energy stops increasing there).  The truncation level is recorded
    on the returned Spectrum.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    entries = [(0, model.e0)]
    cutoff = None
    energy = model.e0
    for n in range(1, n_max + 1):
        if model.level_cap is not None and n > model.level_cap:
            cutoff = n - 1
            break
        rn = model.remainder.at_step(n)
        if rn <= 0:
            cutoff = n - 1
            break
        energy += rn
        entries.append((n, energy))
    return Spectrum(tuple(entries), provenance=Spectrum.ALGEBRAIC, cutoff=cutoff)


def shift_model(model: ShapeInvariantModel, k: int) -> ShapeInvariantModel:
    """The k-th partner in the factorization hierarchy.

    Its potential is V1(x; a_k) + E_k, its ground energy is E_k, and its
    tower is the original one with the lowest k levels removed.
    """
    if k < 0:
        raise ValueError("shift index must be >= 0")
    if k == 0:
        return model
    ak = model.rule.orbit(k)
    ek = model.e0 + model.remainder.partial_sum(k)
    rule = replace(model.rule, a0=ak)
    pot = Potential(
        evaluator=lambda x, _a=ak, _e=ek: model.v1(x, _a) + _e,
        domain=model.potential.domain,
        params=dict(model.potential.params, chain_shift=k),
        label=model.potential.label + f" [chain shift {k}]",
    )
    cap = None if model.level_cap is None else model.level_cap - k
    return ShapeInvariantModel(
        superpotential=model.superpotential,
        rule=rule,
        remainder=replace(model.remainder, rule=rule),
        e0=ek,
        potential=pot,
        level_cap=cap,
    )


def _cumulative_trapezoid_from_mid(w: np.ndarray, h: float) -> np.ndarray:
    inc = np.concatenate(([0.0], np.cumsum((w[1:] + w[:-1]) * (h / 2.0))))
    return inc - inc[len(inc) // 2]


def ground_state(model: ShapeInvariantModel, grid: Grid) -> WaveFunction:
    """psi0 = exp(-int W(x, a0) dx), normalized to 1 on the grid.

    Uses the superpotential's exact antiderivative when available; otherwise
    cumulative trapezoidal quadrature referenced to the grid midpoint (the
    constant of integration is absorbed by normalization).  The exponent is
    shifted by its maximum before exponentiating, so overflow cannot occur.
    """
    sp = model.superpotential
    sp.domain.require_interior(grid.points, what="grid point")
    a0 = model.rule.a0
    if sp.w_integral is not None:
        q = np.asarray(sp.w_integral(grid.points, a0), dtype=float)
    else:
        q = _cumulative_trapezoid_from_mid(
            np.asarray(sp.w(grid.points, a0), dtype=float), grid.h
        )
    expo = -q
    vals = np.exp(expo - expo.max())
    wf = WaveFunction(grid, vals)
    return wf.normalized()


def central_difference(values: np.ndarray, h: float) -> np.ndarray:
    """Second-order first derivative: central interior, one-sided at ends."""
    v = np.asarray(values, dtype=float)
    if v.size < 3:
        raise ValueError("need at least 3 samples to differentiate")
    dv = np.empty_like(v)
    dv[1:-1] = (v[2:] - v[:-2]) / (2.0 * h)
    dv[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
    dv[-1] = (3.0 * v[-1] - 4.0 * v[-2] + v[-3]) / (2.0 * h)
    return dv


def raise_state(
    model: ShapeInvariantModel,
    psi: WaveFunction,
    level: int,
    psi_prime: Optional[np.ndarray] = None,
) -> WaveFunction:
    """One ladder step: psi is the level-th state of the once-shifted chain;
    returns the (level+1)-th state of this model's chain.

    Applies A^dag = W(x, a0) - d/dx and divides by the algebraic normalizer
    sqrt(sum_{k=1..level+1} r(a_k)).  The derivative is taken by central
    differences unless exact samples are passed via psi_prime; near singular
    endpoints finite differences contaminate the edge nodes, so chain
    construction should go through ladder_states, which propagates exact
    derivatives.
    """
    if level < 0:
        raise ValueError("level must be >= 0")
    increment = model.remainder.at_step(level + 1)
    if increment <= 0 or (
        model.level_cap is not None and level + 1 > model.level_cap
    ):
        raise LadderExhaustedError(
            f"no bound level {level + 1}: remainder increment r(a_{level + 1}) = "
            f"{increment:g} is not positive"
        )
    s = model.remainder.partial_sum(level + 1)
    if s <= 0:
        raise LadderExhaustedError(
            f"normalizer sum for level {level + 1} is non-positive ({s:g})"
        )
    x = psi.grid.points
    w0 = model.superpotential.w(x, model.rule.a0)
    dpsi = psi_prime if psi_prime is not None else central_difference(psi.values, psi.grid.h)
    return WaveFunction(psi.grid, (w0 * psi.values - dpsi) / np.sqrt(s))


def ladder_states(model: ShapeInvariantModel, count: int, grid: Grid) -> list:
    """psi_0 .. psi_{count-1} of the model's chain.

    Standard recursion: the n-th state is reached by one A^dag application
    per hierarchy step, starting from the ground state of the n-shifted
    chain.  Derivatives are propagated exactly through each step using
    u'' = (V1 - eps) u, so no finite differencing enters; the returned
    states carry only quadrature-level error even next to singular walls.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if model.level_cap is not None and count - 1 > model.level_cap:
        raise LadderExhaustedError(
            f"model has levels 0..{model.level_cap}; cannot build {count} states"
        )
    sp = model.superpotential
    x = grid.points
    out = []
    for lev in range(count):
        top = shift_model(model, lev)
        u = ground_state(top, grid).values
        a_top = top.rule.a0
        up = -sp.w(x, a_top) * u
        eps = 0.0  # energy within the current chain, ground level = 0
        for j in range(lev - 1, -1, -1):
            aj = model.rule.orbit(j)
            aj1 = model.rule.orbit(j + 1)
            rj1 = model.remainder.r(aj1)
            if rj1 <= 0:
                raise LadderExhaustedError(
                    f"remainder increment at chain step {j + 1} is non-positive"
                )
            v = sp.w(x, aj) * u - up
            upp = (model.v1(x, aj1) - eps) * u
            vp = sp.w_prime(x, aj) * u + sp.w(x, aj) * up - upp
            eps += rj1
            scale = np.sqrt(eps)
            u, up = v / scale, vp / scale
        out.append(WaveFunction(grid, u))
    return out


def count_nodes(wf: WaveFunction, rel_floor: float = 1e-8) -> int:
    """Sign changes of psi, ignoring samples below rel_floor * max|psi|."""
    v = wf.values
    mask = np.abs(v) > rel_floor * np.abs(v).max()
    s = np.sign(v[mask])
    return int(np.sum(s[1:] * s[:-1] < 0))
