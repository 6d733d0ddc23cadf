"""Densities on a discretized measure space.

A :class:`SupportGrid` carries strictly increasing support coordinates and one
positive quadrature measure per point, so that for values ``v`` on the grid

    integral(v) = sum_i v[i] * cell_measures[i]

approximates the integral of the underlying function against the measure.
A :class:`GridDensity` is a strictly positive vector of values on a grid whose
quadrature sum is one.  All objects are immutable after construction and every
operation is a pure function, so the whole module is thread-safe.

Two grid kinds exist: ``continuous`` grids partition ``[lower, upper]`` into
cells (midpoint-style measures, endpoint cells at half width, so the measures
sum to ``upper - lower``), and ``counting`` grids carry unit measure per point
(probability mass functions).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    IndexOutOfRangeError,
    LengthMismatchError,
    NonFiniteIntegralError,
    NonPositiveGammaError,
    NonPositiveValueError,
)

# Relative tolerance below which two density values count as tied.  Shared by
# mode detection and the pairwise relation classifier so that "equal" and
# "strictly ordered" partition pair space consistently.
TIE_REL_TOL = 1e-12

# A constructed density must integrate to one within this tolerance.
NORMALIZATION_TOL = 1e-9

# Continuous cell measures must sum to the support length within this.
MEASURE_SUM_TOL = 1e-12


class GridKind(str, Enum):
    CONTINUOUS = "continuous"
    COUNTING = "counting"


def _as_float_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    return arr


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class SupportGrid:
    """Discretized support with per-cell quadrature measures."""

    points: np.ndarray
    cell_measures: np.ndarray
    lower: float
    upper: float
    kind: GridKind = GridKind.CONTINUOUS

    def __post_init__(self):
        pts = _as_float_array(self.points, "points")
        w = _as_float_array(self.cell_measures, "cell_measures")
        if pts.size != w.size:
            raise LengthMismatchError(
                f"{pts.size} points but {w.size} cell measures"
            )
        if pts.size < 2:
            raise ValueError("a grid needs at least 2 points")
        if not np.all(np.diff(pts) > 0):
            raise ValueError("grid points must be strictly increasing")
        if not np.all(w > 0):
            raise NonPositiveValueError("every cell measure must be > 0")
        if not (np.isfinite(pts).all() and np.isfinite(w).all()):
            raise ValueError("grid points and measures must be finite")
        kind = GridKind(self.kind)
        if kind is GridKind.CONTINUOUS:
            span = float(self.upper) - float(self.lower)
            if abs(float(np.sum(w)) - span) > MEASURE_SUM_TOL * max(1.0, span):
                raise ValueError(
                    "continuous cell measures must sum to upper - lower"
                )
        else:
            if not np.all(w == 1.0):
                raise ValueError("counting grids use unit cell measures")
        object.__setattr__(self, "points", _freeze(pts))
        object.__setattr__(self, "cell_measures", _freeze(w))
        object.__setattr__(self, "lower", float(self.lower))
        object.__setattr__(self, "upper", float(self.upper))
        object.__setattr__(self, "kind", kind)

    def __len__(self) -> int:
        return self.points.size

    @classmethod
    def uniform(cls, lower: float, upper: float, num_points: int) -> "SupportGrid":
        """Evenly spaced grid on [lower, upper].

        Cell measure equals the spacing, with the two endpoint cells at half
        weight, so constants integrate exactly and linear integrands are exact
        as well (trapezoid-consistent weights).
        """
        if num_points < 2:
            raise ValueError("a grid needs at least 2 points")
        if not upper > lower:
            raise ValueError("upper must exceed lower")
        pts = np.linspace(lower, upper, num_points)
        h = (upper - lower) / (num_points - 1)
        w = np.full(num_points, h)
        w[0] = w[-1] = h / 2
        return cls(pts, w, lower, upper)

    @classmethod
    def from_points(cls, points, lower: float, upper: float) -> "SupportGrid":
        """Grid on arbitrary strictly increasing points inside [lower, upper].

        Each point's cell runs between the midpoints to its neighbours
        (endpoint cells extend to the support bounds), so the measures sum to
        ``upper - lower`` exactly.
        """
        pts = _as_float_array(points, "points")
        if not (lower <= pts[0] and pts[-1] <= upper):
            raise ValueError("points must lie inside [lower, upper]")
        mids = 0.5 * (pts[1:] + pts[:-1])
        edges = np.concatenate([[lower], mids, [upper]])
        return cls(pts, np.diff(edges), lower, upper)

    @classmethod
    def edge_graded(cls, lower: float, upper: float, num_points: int) -> "SupportGrid":
        """Grid with cosine clustering toward both endpoints.

        Cell widths shrink quadratically near the boundary, which keeps the
        quadrature accurate for densities with integrable endpoint
        singularities (u-shaped Beta kernels) where a uniform grid loses
        several digits.
        """
        if num_points < 2:
            raise ValueError("a grid needs at least 2 points")
        if not upper > lower:
            raise ValueError("upper must exceed lower")
        u = 0.5 * (1.0 - np.cos(np.pi * np.arange(num_points) / (num_points - 1)))
        pts = lower + (upper - lower) * u
        return cls.from_points(pts, lower, upper)

    @classmethod
    def log_graded(cls, lower: float, upper: float, num_points: int) -> "SupportGrid":
        """Grid with logarithmic point spacing, for heavy right tails."""
        if not 0 < lower < upper:
            raise ValueError("log grading needs 0 < lower < upper")
        pts = np.exp(np.linspace(np.log(lower), np.log(upper), num_points))
        # exact endpoints, guarding against exp/log round-trip drift
        pts[0], pts[-1] = lower, upper
        return cls.from_points(pts, lower, upper)

    @classmethod
    def counting(cls, num_points: int) -> "SupportGrid":
        """Discrete grid over coordinates 0..n-1 with unit cell measures."""
        pts = np.arange(num_points, dtype=float)
        w = np.ones(num_points)
        return cls(pts, w, 0.0, float(num_points - 1), GridKind.COUNTING)


def grids_equal(a: SupportGrid, b: SupportGrid) -> bool:
    """Whether two grids describe the same discretized measure space."""
    if a is b:
        return True
    return (
        a.kind == b.kind
        and len(a) == len(b)
        and np.array_equal(a.points, b.points)
        and np.array_equal(a.cell_measures, b.cell_measures)
    )


@dataclass(frozen=True, eq=False)
class GridDensity:
    """Strictly positive density values on a grid, integrating to one."""

    grid: SupportGrid
    values: np.ndarray

    def __post_init__(self):
        v = _as_float_array(self.values, "values")
        if v.size != len(self.grid):
            raise LengthMismatchError(
                f"{v.size} values for a {len(self.grid)}-point grid"
            )
        if not np.all(v > 0):
            raise NonPositiveValueError("density values must be strictly positive")
        total = float(np.sum(v * self.grid.cell_measures))
        if not np.isfinite(total):
            raise NonFiniteIntegralError("density quadrature sum is not finite")
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise NonPositiveValueError(
                f"density integrates to {total!r}, not 1 (tolerance {NORMALIZATION_TOL})"
            )
        object.__setattr__(self, "values", _freeze(v))

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class MomentSummary:
    """Mean, variance, and the set of maximizing support coordinates."""

    mean: float
    variance: float
    mode_points: tuple

    def __post_init__(self):
        if self.variance < 0:
            raise ValueError("variance must be nonnegative")
        if not self.mode_points:
            raise ValueError("mode_points must be nonempty")


def integrate(values, grid: SupportGrid) -> float:
    """Quadrature sum ``sum_i values[i] * cell_measures[i]``."""
    v = _as_float_array(values, "values")
    if v.size != len(grid):
        raise LengthMismatchError(
            f"{v.size} values for a {len(grid)}-point grid"
        )
    return float(np.sum(v * grid.cell_measures))


def normalize(raw_values, grid: SupportGrid) -> GridDensity:
    """Scale positive raw values so they integrate to one on the grid.

    Ratios between values are preserved exactly up to rounding, since the
    operation is a single scalar division.

    Raises
    ------
    NonPositiveValueError
        If any raw value is <= 0.
    NonFiniteIntegralError
        If the quadrature sum is infinite, NaN, or zero.
    """
    v = _as_float_array(raw_values, "raw_values")
    if v.size != len(grid):
        raise LengthMismatchError(
            f"{v.size} values for a {len(grid)}-point grid"
        )
    if not np.all(v > 0):
        raise NonPositiveValueError("raw values must be strictly positive")
    total = float(np.sum(v * grid.cell_measures))
    if not np.isfinite(total) or total <= 0:
        raise NonFiniteIntegralError(
            f"quadrature sum {total!r} cannot normalize a density"
        )
    return GridDensity(grid, v / total)


def power_transform(d: GridDensity, gamma: float) -> GridDensity:
    """Raise a density to a positive exponent and renormalize.

    The map ``x -> x**gamma`` is strictly increasing for ``gamma > 0``, so the
    argmax set of the result is identical to the input's (mode preserving).
    ``gamma == 1`` returns an exact copy of the values, avoiding pow/normalize
    round-trip drift.
    """
    if not gamma > 0:
        raise NonPositiveGammaError(f"gamma must be > 0, got {gamma!r}")
    if gamma == 1.0:
        return GridDensity(d.grid, d.values)
    # log-space exponentiation keeps extreme values finite before rescaling
    logv = gamma * np.log(d.values)
    raw = np.exp(logv - np.max(logv))
    total = float(np.sum(raw * d.grid.cell_measures))
    if not np.isfinite(total) or total <= 0:
        raise NonFiniteIntegralError(
            f"power transform with gamma={gamma!r} failed to normalize"
        )
    return GridDensity(d.grid, raw / total)


def entropy(d: GridDensity) -> float:
    """Information entropy ``-sum_i v[i] * log(v[i]) * w[i]`` in nats."""
    return float(-np.sum(d.values * np.log(d.values) * d.grid.cell_measures))


def surprisal(d: GridDensity, index: int) -> float:
    """``-log`` of the density value at a grid point index."""
    n = len(d)
    if not isinstance(index, (int, np.integer)) or not 0 <= index < n:
        raise IndexOutOfRangeError(f"index {index!r} outside [0, {n})")
    return float(-np.log(d.values[index]))


def mode_points(d: GridDensity, rel_tol: float = TIE_REL_TOL) -> tuple:
    """Support coordinates whose density ties the maximum within rel_tol."""
    vmax = float(np.max(d.values))
    mask = d.values >= vmax * (1.0 - rel_tol)
    return tuple(float(x) for x in d.grid.points[mask])


def moments(d: GridDensity) -> MomentSummary:
    """Mean, variance, and mode set of a grid density."""
    x = d.grid.points
    w = d.grid.cell_measures
    mean = float(np.sum(x * d.values * w))
    variance = float(np.sum((x - mean) ** 2 * d.values * w))
    return MomentSummary(mean=mean, variance=max(variance, 0.0), mode_points=mode_points(d))
