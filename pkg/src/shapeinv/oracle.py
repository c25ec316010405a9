"""Independent finite-difference bound-state solver.

This is the ground truth the algebraic machinery is checked against: a plain
second-order discretization of -psi'' + V psi = E psi with Dirichlet walls one
grid spacing outside the first and last node, diagonalized with a symmetric
tridiagonal method (bisection plus inverse iteration).  Nothing here knows
about superpotentials or remainders.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .core import Grid, Potential, Spectrum, WaveFunction

__all__ = ["EigenResult", "SpectrumComparison", "solve_bound_states", "compare_spectra"]

MIN_ORACLE_POINTS = 200


@dataclass(frozen=True)
class EigenResult:
    """The k lowest eigenpairs on a grid, with per-level bound flags."""

    spectrum: Spectrum
    wavefunctions: tuple
    grid: Grid
    bound: tuple

    def bound_spectrum(self) -> Spectrum:
        entries = [e for e, b in zip(self.spectrum.entries, self.bound) if b]
        if not entries:
            raise ValueError("no bound levels below the continuum threshold")
        return Spectrum(tuple(entries), provenance=Spectrum.ORACLE)


def _bound_threshold(V: Potential, grid: Grid) -> float:
    """Continuum threshold: min of V over the ends a particle can escape to.

    Finite window walls are hard walls (no continuum); if neither end is
    open the whole discrete spectrum is bound.
    """
    esc_lower, esc_upper = V.domain.escapable_ends
    vals = []
    if esc_lower:
        vals.append(float(V(grid.points[0])))
    if esc_upper:
        vals.append(float(V(grid.points[-1])))
    return min(vals) if vals else math.inf


def solve_bound_states(V: Potential, grid: Grid, k: int) -> EigenResult:
    """Lowest k eigenpairs of the Dirichlet discretization of -D^2 + V.

    The matrix has diagonal 2/h^2 + V(x_i) and off-diagonal -1/h^2; walls sit
    one spacing outside the end nodes.  Eigenvalues below the potential's
    escape asymptote are flagged bound; the rest are discretized continuum.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = grid.n
    if n < MIN_ORACLE_POINTS:
        raise ValueError(f"oracle grid needs >= {MIN_ORACLE_POINTS} points, got {n}")
    if k > n:
        raise ValueError(f"k = {k} exceeds matrix size {n}")
    h = grid.h
    diag = 2.0 / h ** 2 + np.asarray(V(grid.points), dtype=float)
    off = np.full(n - 1, -1.0 / h ** 2)
    w, v = eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))

    threshold = _bound_threshold(V, grid)
    wfs = []
    for i in range(k):
        wf = WaveFunction(grid, v[:, i] / math.sqrt(h)).normalized()
        wfs.append(wf)
    spec = Spectrum(
        tuple((i, float(w[i])) for i in range(k)), provenance=Spectrum.ORACLE
    )
    return EigenResult(
        spectrum=spec,
        wavefunctions=tuple(wfs),
        grid=grid,
        bound=tuple(bool(w[i] < threshold) for i in range(k)),
    )


@dataclass(frozen=True)
class SpectrumComparison:
    """Per-level pairing report between two spectra."""

    rows: tuple            # (n, E_a, E_b, deviation, allowed, passed)
    only_in_a: tuple
    only_in_b: tuple
    rel_tol: float
    abs_tol: float

    @property
    def all_pass(self) -> bool:
        return all(row[-1] for row in self.rows)

    @property
    def worst_deviation(self) -> float:
        return max((row[3] for row in self.rows), default=0.0)

    def to_json_obj(self) -> dict:
        return {
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "all_pass": self.all_pass,
            "worst_deviation": self.worst_deviation,
            "rows": [
                {
                    "n": n,
                    "energy_a": ea,
                    "energy_b": eb,
                    "deviation": dev,
                    "allowed": allowed,
                    "pass": ok,
                }
                for n, ea, eb, dev, allowed, ok in self.rows
            ],
            "only_in_a": list(self.only_in_a),
            "only_in_b": list(self.only_in_b),
        }


def compare_spectra(
    a: Spectrum, b: Spectrum, rel_tol: float, abs_tol: float
) -> SpectrumComparison:
    """Pair levels by index; a level passes iff
    |E_a - E_b| <= abs_tol + rel_tol * max(|E_a|, |E_b|).

    Mismatched level sets are compared on the intersection and the asymmetry
    is reported, not raised.
    """
    da = dict(a.entries)
    db = dict(b.entries)
    common = sorted(set(da) & set(db))
    rows = []
    for n in common:
        ea, eb = da[n], db[n]
        dev = abs(ea - eb)
        allowed = abs_tol + rel_tol * max(abs(ea), abs(eb))
        rows.append((n, ea, eb, dev, allowed, dev <= allowed))
    return SpectrumComparison(
        rows=tuple(rows),
        only_in_a=tuple(sorted(set(da) - set(db))),
        only_in_b=tuple(sorted(set(db) - set(da))),
        rel_tol=rel_tol,
        abs_tol=abs_tol,
    )
