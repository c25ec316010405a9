"""Core data model: domains, grids, potentials, superpotentials and the
shape-invariance machinery built on them.

Conventions used throughout the package: units with hbar = 1 and 2m = 1, so
the stationary problem is  -psi'' + V psi = E psi  and the factorization
operators are A = W + d/dx, A^dag = W - d/dx.  Partner potentials are

    V1 = W^2 - W',      V2 = W^2 + W'.

A model is *shape invariant* when V2(x; a0) = V1(x; a1) + r(a1) for a
parameter step a0 -> a1, with r the remainder function; the bound spectrum
is then E_n = e0 + sum_{k=1..n} r(a_k).
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "DomainSpec",
    "Grid",
    "Potential",
    "Superpotential",
    "ParameterRule",
    "RemainderSequence",
    "ShapeInvariantModel",
    "WaveFunction",
    "Spectrum",
    "partner_potentials",
    "shape_invariance_residual",
    "parameter_orbit",
    "trapezoid",
]

FULL_LINE = "full-line"
HALF_LINE = "half-line"
OPEN_INTERVAL = "open-interval"

_trapz = getattr(np, "trapezoid", None) or np.trapz


def trapezoid(y, x):
    """Trapezoidal quadrature, the one inner product used everywhere."""
    return float(_trapz(np.asarray(y, dtype=float), np.asarray(x, dtype=float)))


@dataclass(frozen=True)
class DomainSpec:
    """An open interval on which a potential lives.

    kind is one of "full-line", "half-line", "open-interval".  Endpoints may
    be singular points of the potential; evaluation is only ever legal on the
    open interior.
    """

    kind: str
    lower: float
    upper: float

    def __post_init__(self):
        if self.kind not in (FULL_LINE, HALF_LINE, OPEN_INTERVAL):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if not self.lower < self.upper:
            raise ValueError("domain requires lower < upper")
        if self.kind == HALF_LINE and self.lower != 0.0:
            raise ValueError("half-line domains start at 0")
        if self.kind == OPEN_INTERVAL and not (
            math.isfinite(self.lower) and math.isfinite(self.upper)
        ):
            raise ValueError("open-interval endpoints must be finite")

    @classmethod
    def full_line(cls) -> "DomainSpec":
        return cls(FULL_LINE, -math.inf, math.inf)

    @classmethod
    def half_line(cls) -> "DomainSpec":
        return cls(HALF_LINE, 0.0, math.inf)

    @classmethod
    def open_interval(cls, lower: float, upper: float) -> "DomainSpec":
        return cls(OPEN_INTERVAL, float(lower), float(upper))

    def contains_interior(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (x > self.lower) & (x < self.upper)

    def require_interior(self, x, what: str = "x") -> None:
        inside = self.contains_interior(x)
        if not np.all(inside):
            bad = np.asarray(x, dtype=float)[~np.atleast_1d(inside)]
            raise DomainError(
                f"{what} = {bad[:3]} outside the open interior "
                f"({self.lower}, {self.upper}) of the {self.kind} domain"
            )

    @property
    def escapable_ends(self) -> tuple[bool, bool]:
        """(lower, upper) flags: can a particle escape to that end?

        A finite endpoint acts as a hard wall for the bound-state filter;
        only infinite ends carry a continuum threshold.
        """
        return (not math.isfinite(self.lower), not math.isfinite(self.upper))


@dataclass(frozen=True)
class Grid:
    """Uniformly spaced sample points strictly inside a domain.

    Built with n interior nodes between two wall positions, so the first and
    last node sit exactly one spacing away from the walls.  The Dirichlet
    eigensolver implies psi = 0 at the walls; keeping the walls off-grid means
    singular endpoint potentials are never evaluated.
    """

    points: np.ndarray
    domain: DomainSpec

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("grid needs at least two points")
        d = np.diff(pts)
        if np.any(d <= 0):
            raise ValueError("grid points must be strictly increasing")
        h = (pts[-1] - pts[0]) / (pts.size - 1)
        scale = max(1.0, abs(pts[0]), abs(pts[-1]))
        if np.max(np.abs(d - h)) > 1e-12 * scale:
            raise ValueError("grid spacing is not uniform")
        self.domain.require_interior(pts, what="grid point")

    @classmethod
    def open_window(cls, domain: DomainSpec, lower: float, upper: float, n: int) -> "Grid":
        """n interior nodes of (lower, upper); walls at the window ends."""
        if n < 2:
            raise ValueError("need n >= 2 interior nodes")
        if not lower < upper:
            raise ValueError("window requires lower < upper")
        h = (upper - lower) / (n + 1)
        pts = lower + h * np.arange(1, n + 1)
        return cls(points=pts, domain=domain)

    @property
    def h(self) -> float:
        return float((self.points[-1] - self.points[0]) / (self.points.size - 1))

    @property
    def n(self) -> int:
        return int(self.points.size)

    @property
    def walls(self) -> tuple[float, float]:
        return (float(self.points[0] - self.h), float(self.points[-1] + self.h))

    def trapezoid(self, values) -> float:
        return trapezoid(values, self.points)


@dataclass(frozen=True)
class Potential:
    """A scalar potential: an evaluator, its domain, and named parameters."""

    evaluator: Callable[[np.ndarray], np.ndarray]
    domain: DomainSpec
    params: dict = field(default_factory=dict)
    label: str = ""

    def __call__(self, x, check: bool = True):
        if check:
            self.domain.require_interior(x)
        return self.evaluator(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class Superpotential:
    """W(x, a) with its analytic x-derivative and, optionally, an exact
    antiderivative Q(x, a) = int W dx.

    The antiderivative is used by the ground-state construction when present;
    cumulative quadrature of W is accurate in the bulk but loses digits next
    to singular endpoints (tan/cot walls), which matters once the result is
    fed through residual checks weighted by the singular potential.
    """

    w: Callable[[np.ndarray, float], np.ndarray]
    w_prime: Callable[[np.ndarray, float], np.ndarray]
    domain: DomainSpec
    w_integral: Optional[Callable[[np.ndarray, float], np.ndarray]] = None


@dataclass(frozen=True)
class ParameterRule:
    """Parameter update a0 -> a1 -> ... of a shape-invariant chain.

    translation: a_n = a0 + n*step.   scaling: a_n = step**n * a0 with
    step > 0, step != 1.
    """

    kind: str
    a0: float
    step: float

    TRANSLATION = "translation"
    SCALING = "scaling"

    def __post_init__(self):
        if self.kind not in (self.TRANSLATION, self.SCALING):
            raise ValueError(f"unknown parameter rule class {self.kind!r}")
        if self.kind == self.SCALING and (self.step <= 0 or self.step == 1.0):
            raise ValueError("scaling rule requires step q > 0, q != 1")

    def orbit(self, n: int) -> float:
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise ValueError(f"orbit index must be a non-negative integer, got {n!r}")
        if self.kind == self.TRANSLATION:
            return self.a0 + n * self.step
        return (self.step ** n) * self.a0


@dataclass(frozen=True)
class RemainderSequence:
    """The remainder r(a) of the shape-invariance condition plus its rule."""

    r: Callable[[float], float]
    rule: ParameterRule

    def at_step(self, n: int) -> float:
        """r(a_n)."""
        return float(self.r(self.rule.orbit(n)))

    def spacing(self, n: int) -> float:
        """r(a_n) - r(a_{n-1}) for n >= 1."""
        if n < 1:
            raise ValueError("spacing is defined for n >= 1")
        return self.at_step(n) - self.at_step(n - 1)

    def partial_sum(self, n: int) -> float:
        """sum_{k=1..n} r(a_k); the excitation energy above e0."""
        return float(sum(self.at_step(k) for k in range(1, n + 1)))


@dataclass(frozen=True)
class ShapeInvariantModel:
    """Everything the algebraic machinery needs about one solvable model.

    e0 is the physical ground energy: V(x) = V1(x; a0) + e0 with
    V1 = W^2 - W'.  level_cap, when set, is the index of the highest bound
    level (finite towers such as Morse); None means the tower is unbounded.
    """

    superpotential: Superpotential
    rule: ParameterRule
    remainder: RemainderSequence
    e0: float
    potential: Potential
    level_cap: Optional[int] = None

    def v1(self, x, a: float):
        sp = self.superpotential
        x = np.asarray(x, dtype=float)
        return sp.w(x, a) ** 2 - sp.w_prime(x, a)

    def v2(self, x, a: float):
        sp = self.superpotential
        x = np.asarray(x, dtype=float)
        return sp.w(x, a) ** 2 + sp.w_prime(x, a)


@dataclass(frozen=True)
class WaveFunction:
    """Samples of psi on a grid; norm is the trapezoidal L2 norm."""

    grid: Grid
    values: np.ndarray
    norm: float = None  # type: ignore[assignment]

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.shape != self.grid.points.shape:
            raise ValueError("values and grid have different lengths")
        if not np.all(np.isfinite(vals)):
            raise ValueError("wavefunction values must be finite")
        if self.norm is None:
            object.__setattr__(
                self, "norm", math.sqrt(max(self.grid.trapezoid(vals * vals), 0.0))
            )

    def normalized(self) -> "WaveFunction":
        if self.norm == 0:
            raise ValueError("cannot normalize the zero function")
        return WaveFunction(self.grid, self.values / self.norm, norm=1.0)

    def inner(self, other: "WaveFunction") -> float:
        if other.grid.points.shape != self.grid.points.shape or not np.allclose(
            other.grid.points, self.grid.points
        ):
            raise ValueError("wavefunctions live on different grids")
        return self.grid.trapezoid(self.values * other.values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x,psi\n")
        for x, v in zip(self.grid.points, self.values):
            buf.write(f"{x!r},{v!r}\n")
        return buf.getvalue()


@dataclass(frozen=True)
class Spectrum:
    """Ordered bound-state energies with their provenance.

    cutoff records the level at which an algebraic tower was truncated
    (finite towers only).
    """

    entries: tuple
    provenance: str
    cutoff: Optional[int] = None

    ALGEBRAIC = "algebraic"
    ORACLE = "oracle"

    def __post_init__(self):
        entries = tuple((int(n), float(e)) for n, e in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("spectrum needs at least one entry")
        ns = [n for n, _ in entries]
        if ns != sorted(set(ns)):
            raise ValueError("level indices must be strictly increasing")
        es = np.array([e for _, e in entries])
        if np.any(np.diff(es) < -1e-9 * max(1.0, np.abs(es).max())):
            raise ValueError("bound-state energies must be non-decreasing")

    def energies(self) -> np.ndarray:
        return np.array([e for _, e in self.entries])

    def levels(self) -> list:
        return [n for n, _ in self.entries]

    def energy(self, n: int) -> float:
        for k, e in self.entries:
            if k == n:
                return e
        raise KeyError(f"no level n = {n} in spectrum")

    def to_json_obj(self) -> dict:
        obj = {
            "provenance": self.provenance,
            "levels": [{"n": n, "energy": e} for n, e in self.entries],
        }
        if self.cutoff is not None:
            obj["cutoff"] = self.cutoff
        return obj


def partner_potentials(sp: Superpotential, a: float) -> tuple[Potential, Potential]:
    """The partner pair V1 = W^2 - W', V2 = W^2 + W' at parameter a."""

    def v1(x, _a=a):
        return sp.w(x, _a) ** 2 - sp.w_prime(x, _a)

    def v2(x, _a=a):
        return sp.w(x, _a) ** 2 + sp.w_prime(x, _a)

    p1 = Potential(v1, sp.domain, params={"a": a}, label=f"V1(a={a:g})")
    p2 = Potential(v2, sp.domain, params={"a": a}, label=f"V2(a={a:g})")
    return p1, p2


def shape_invariance_residual(model: ShapeInvariantModel, grid: Grid) -> float:
    """max_x |V2(x, a0) - V1(x, a1) - r(a1)| over the grid.

    Zero (to rounding) exactly when the model is shape invariant with the
    stored remainder.
    """
    model.superpotential.domain.require_interior(grid.points, what="grid point")
    a0 = model.rule.a0
    a1 = model.rule.orbit(1)
    lhs = model.v2(grid.points, a0)
    rhs = model.v1(grid.points, a1) + model.remainder.r(a1)
    return float(np.max(np.abs(lhs - rhs)))


def parameter_orbit(rule: ParameterRule, n: int) -> float:
    """a_n under the rule's class (translation or scaling)."""
    return rule.orbit(n)
