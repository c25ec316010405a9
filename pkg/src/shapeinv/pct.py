"""Point canonical transformations between Schroedinger problems.

A change of variable x = f(z) together with the rescaling
psi(x) = g(z) psitilde(z), g = c sqrt|f'|, maps -psi'' + (V - E) psi = 0 into

    -psitilde'' + [ f'^2 (V(f(z)) - E) + S(z) ] psitilde = 0,
    S = (1/2) ( (3/2) (f''/f')^2 - f'''/f' ),

with no first-derivative term.  transform_potential evaluates the bracket
directly from f and its exact derivatives; nothing about the image form is
hard-coded, so disputed closed-form constants can be adjudicated numerically
(fit the image, transport an eigenpair, check the residual).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .core import DomainSpec, Grid, Potential, WaveFunction
from .errors import DomainError, SingularMapError

__all__ = [
    "PCTMap",
    "exp_map",
    "logcos_map",
    "map_from_function",
    "transform_potential",
    "map_wavefunction",
    "pullback_wavefunction",
    "residual_check",
    "first_derivative_coefficient",
    "fit_exp_form",
    "fit_trig_form",
    "exp_form_potential",
    "trig_form_potential",
]


@dataclass(frozen=True)
class PCTMap:
    """x = f(z) with exact derivatives f1, f2, f3 and weight g = c sqrt|f1|.

    target_domain is where z lives, source_domain is where x = f(z) lands.
    The absolute value in the weight keeps g real for orientation-reversing
    maps (decreasing f); c is physically irrelevant and defaults to 1.
    """

    f: Callable
    f1: Callable
    f2: Callable
    f3: Callable
    source_domain: DomainSpec
    target_domain: DomainSpec
    c: float = 1.0
    name: str = ""

    def weight(self, z):
        return self.c * np.sqrt(np.abs(self.f1(np.asarray(z, dtype=float))))

    def orientation_reversing(self, z_probe: float = None) -> bool:
        if z_probe is None:
            lo, hi = self.target_domain.lower, self.target_domain.upper
            if math.isfinite(lo) and math.isfinite(hi):
                z_probe = 0.5 * (lo + hi)
            elif math.isfinite(lo):
                z_probe = lo + 1.0
            elif math.isfinite(hi):
                z_probe = hi - 1.0
            else:
                z_probe = 0.0
        return bool(self.f1(z_probe) < 0)


def exp_map(c: float = 1.0) -> PCTMap:
    """x = exp(-z): the full line onto the half line, orientation-reversing.

    Weight g = c exp(-z/2).  Sends the -a/x + b/x^2 + const family onto
    Morse-form images (linear combinations of exp(-2z), exp(-z), 1).
    """
    return PCTMap(
        f=lambda z: np.exp(-z),
        f1=lambda z: -np.exp(-z),
        f2=lambda z: np.exp(-z),
        f3=lambda z: -np.exp(-z),
        source_domain=DomainSpec.half_line(),
        target_domain=DomainSpec.full_line(),
        c=c,
        name="exp",
    )


def logcos_map(c: float = 1.0) -> PCTMap:
    """x = -2 ln(cos z): (0, pi/2) onto the half line, orientation-preserving.

    Weight g = c sqrt(2 tan z).  Sends the Hulthen potential onto a
    trigonometric Poeschl-Teller image (sec^2 / csc^2 / const combination).
    """
    sec2 = lambda z: 1.0 / np.cos(z) ** 2
    return PCTMap(
        f=lambda z: -2.0 * np.log(np.cos(z)),
        f1=lambda z: 2.0 * np.tan(z),
        f2=lambda z: 2.0 * sec2(z),
        f3=lambda z: 4.0 * sec2(z) * np.tan(z),
        source_domain=DomainSpec.half_line(),
        target_domain=DomainSpec.open_interval(0.0, math.pi / 2),
        c=c,
        name="logcos",
    )


def map_from_function(
    f: Callable,
    source_domain: DomainSpec,
    target_domain: DomainSpec,
    c: float = 1.0,
    name: str = "user",
) -> PCTMap:
    """Wrap a user-supplied f whose derivatives are produced numerically.

    Richardson-extrapolated central stencils (fourth order) with step
    h = 1e-4 * window width (or 1e-4 * max(1, |z|) on unbounded targets).
    Images computed through such a map are correspondingly less accurate
    than with exact derivatives; invariants loosen to ~1e-4.
    """
    lo, hi = target_domain.lower, target_domain.upper
    finite = math.isfinite(lo) and math.isfinite(hi)
    width = (hi - lo) if finite else None

    def step(z):
        if width is not None:
            return 1e-4 * width
        return 1e-4 * np.maximum(1.0, np.abs(z))

    def f1(z):
        z = np.asarray(z, dtype=float)
        h = step(z)
        return (f(z - 2 * h) - 8 * f(z - h) + 8 * f(z + h) - f(z + 2 * h)) / (12 * h)

    def f2(z):
        z = np.asarray(z, dtype=float)
        h = step(z)
        return (
            -f(z - 2 * h) + 16 * f(z - h) - 30 * f(z) + 16 * f(z + h) - f(z + 2 * h)
        ) / (12 * h ** 2)

    def f3(z):
        z = np.asarray(z, dtype=float)
        h = step(z)
        return (
            -f(z - 3 * h)
            + 8 * f(z - 2 * h)
            - 13 * f(z - h)
            + 13 * f(z + h)
            - 8 * f(z + 2 * h)
            + f(z + 3 * h)
        ) / (8 * h ** 3)

    return PCTMap(
        f=f, f1=f1, f2=f2, f3=f3,
        source_domain=source_domain, target_domain=target_domain, c=c, name=name,
    )


def schwarzian_term(pct: PCTMap, z):
    """S(z) = (1/2)[(3/2)(f''/f')^2 - f'''/f']."""
    z = np.asarray(z, dtype=float)
    r2 = pct.f2(z) / pct.f1(z)
    r3 = pct.f3(z) / pct.f1(z)
    return 0.5 * (1.5 * r2 ** 2 - r3)


def transform_potential(V: Potential, E: float, pct: PCTMap, z):
    """The transformed combination Vtilde(z) - Etilde at z (scalar or array):

        f'(z)^2 (V(f(z)) - E) + S(z).

    How the result splits into potential and eigenvalue is the caller's
    choice of constant; fit_exp_form / fit_trig_form extract the standard
    splits for the built-in maps.
    """
    scalar = np.isscalar(z)
    z = np.atleast_1d(np.asarray(z, dtype=float))
    pct.target_domain.require_interior(z, what="z")
    f1 = pct.f1(z)
    if np.any(f1 == 0) or not np.all(np.isfinite(f1)):
        raise SingularMapError("f'(z) vanishes or is not finite on the given points")
    x = pct.f(z)
    if not np.all(pct.source_domain.contains_interior(x)):
        raise DomainError("f(z) leaves the interior of the source domain")
    out = f1 ** 2 * (V(x) - E) + schwarzian_term(pct, z)
    return float(out[0]) if scalar else out


def map_wavefunction(psi_tilde: WaveFunction, pct: PCTMap) -> WaveFunction:
    """Transport a z-space wavefunction to x-space: psi(f(z)) = g(z) psitilde(z).

    The image points x_i = f(z_i) are monotone but not equispaced (and run
    backwards for orientation-reversing maps), so the samples are sorted and
    resampled onto a uniform grid of the same size by cubic spline; the norm
    is recomputed there.
    """
    z = psi_tilde.grid.points
    x = np.asarray(pct.f(z), dtype=float)
    dx = np.diff(x)
    if np.all(dx > 0):
        reversed_ = False
    elif np.all(dx < 0):
        reversed_ = True
        x = x[::-1]
    else:
        raise SingularMapError("f is not strictly monotone on the grid")
    vals = pct.weight(z) * psi_tilde.values
    if reversed_:
        vals = vals[::-1]
    n = z.size
    xu = np.linspace(x[0], x[-1], n)
    resampled = CubicSpline(x, vals)(xu)
    grid = Grid(points=xu, domain=pct.source_domain)
    return WaveFunction(grid, resampled)


def pullback_wavefunction(psi: WaveFunction, pct: PCTMap, z_grid: Grid) -> WaveFunction:
    """Transport an x-space wavefunction to z-space:
    psitilde(z) = psi(f(z)) / g(z).

    psi is interpolated (cubic spline) at the points x = f(z); every such
    point must lie inside psi's sampled range.
    """
    z = z_grid.points
    pct.target_domain.require_interior(z, what="z")
    x = np.asarray(pct.f(z), dtype=float)
    xs = psi.grid.points
    if x.min() < xs[0] or x.max() > xs[-1]:
        raise ValueError(
            f"f(z) range [{x.min():g}, {x.max():g}] leaves the sampled range "
            f"[{xs[0]:g}, {xs[-1]:g}] of psi"
        )
    vals = CubicSpline(xs, psi.values)(x) / pct.weight(z)
    return WaveFunction(z_grid, vals)


def residual_check(V_target: Potential, E_target: float, psi: WaveFunction) -> float:
    """||(-D^2 + V - E) psi||_2 / ||psi||_2 with second-order central
    differences, excluding the two points nearest each boundary.

    This is a local measure of how well psi solves the equation; it does not
    require psi to have decayed at the window edges.
    """
    grid = psi.grid
    if grid.n < 8:
        raise ValueError("residual check needs at least 8 grid points")
    h = grid.h
    v = psi.values
    x = grid.points
    d2 = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / h ** 2
    r = -d2 + (np.asarray(V_target(x[1:-1]), dtype=float) - E_target) * v[1:-1]
    r = r[1:-1]  # drop the two nodes nearest each wall
    return float(np.linalg.norm(r) / np.linalg.norm(v))


def first_derivative_coefficient(pct: PCTMap, z_grid: Grid, u: Callable) -> float:
    """Fitted coefficient of u' in the transformed equation, for a smooth
    test function u; ~0 confirms the weight g = c sqrt|f'| removes the
    first-derivative term.

    The operator -d^2/dx^2 + (V - E) applied to psi = g u is pushed to
    z-space with exact map derivatives (V - E plays no role in the u'
    coefficient, so it is dropped), and the difference from the predicted
    -u'' + [f'^2 (V - E) + S] u form is regressed on (u, u', u'').
    """
    z = z_grid.points
    h = z_grid.h
    g = pct.weight(z)
    f1 = pct.f1(z)
    uu = u(z)
    y = g * uu

    def ddz(vals):
        out = np.empty_like(vals)
        out[1:-1] = (vals[2:] - vals[:-2]) / (2 * h)
        out[0] = (-3 * vals[0] + 4 * vals[1] - vals[2]) / (2 * h)
        out[-1] = (3 * vals[-1] - 4 * vals[-2] + vals[-3]) / (2 * h)
        return out

    # psi''(x) via the chain rule: (1/f') d/dz [ (1/f') d/dz (g u) ]
    psi_xx = ddz(ddz(y) / f1) / f1
    lhs = -psi_xx * f1 ** 2 / g          # = -u'' + (S - 0) u when g is right
    up = ddz(uu)
    upp = ddz(up)
    predicted = -upp + schwarzian_term(pct, z) * uu
    resid = lhs - predicted

    # regress the leftover on u, u', u'' over the interior
    sl = slice(4, -4)
    basis = np.column_stack([uu[sl], up[sl], upp[sl]])
    coef, *_ = np.linalg.lstsq(basis, resid[sl], rcond=None)
    return float(coef[1])


def _fit_three(z, values, columns):
    A = np.column_stack(columns)
    coef, *_ = np.linalg.lstsq(A, np.asarray(values, dtype=float), rcond=None)
    return tuple(float(c) for c in coef)


def fit_exp_form(z, values):
    """Least-squares coefficients (c2, c1, c0) of
    c2 exp(-2z) + c1 exp(-z) + c0 through the samples."""
    z = np.asarray(z, dtype=float)
    return _fit_three(z, values, [np.exp(-2 * z), np.exp(-z), np.ones_like(z)])


def fit_trig_form(z, values):
    """Least-squares coefficients (c_sec, c_csc, c0) of
    c_sec sec^2 z + c_csc csc^2 z + c0 through the samples."""
    z = np.asarray(z, dtype=float)
    return _fit_three(
        z, values, [1.0 / np.cos(z) ** 2, 1.0 / np.sin(z) ** 2, np.ones_like(z)]
    )


def exp_form_potential(c2: float, c1: float) -> Potential:
    """Morse-form potential c2 exp(-2z) + c1 exp(-z) on the full line."""
    return Potential(
        evaluator=lambda z: c2 * np.exp(-2 * z) + c1 * np.exp(-z),
        domain=DomainSpec.full_line(),
        params={"c2": c2, "c1": c1},
        label=f"exp-form({c2:g},{c1:g})",
    )


def trig_form_potential(c_sec: float, c_csc: float) -> Potential:
    """Poeschl-Teller-form potential c_sec sec^2 z + c_csc csc^2 z on (0, pi/2)."""
    return Potential(
        evaluator=lambda z: c_sec / np.cos(z) ** 2 + c_csc / np.sin(z) ** 2,
        domain=DomainSpec.open_interval(0.0, math.pi / 2),
        params={"c_sec": c_sec, "c_csc": c_csc},
        label=f"trig-form({c_sec:g},{c_csc:g})",
    )
