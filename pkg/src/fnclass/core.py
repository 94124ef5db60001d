"""Grids, trajectories, labeled samples and squared-L2 distances.

Everything downstream (scores, ROC curves, simulations) is built on the
squared-L2 distance between two sampled functions,

    d(f, g) = integral over T of (f(t) - g(t))^2 dt,

approximated with the composite trapezoid rule on the observation grid.
The trapezoid rule is exact for the piecewise-linear interpolants that
sampled data define, so no finer quadrature is warranted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import DimensionError, DomainError, RangeError


def _as_float_vector(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite values")
    return arr


@dataclass(frozen=True, eq=False)
class Grid:
    """Strictly increasing time points on a compact interval.

    `weights` are the composite-trapezoid quadrature weights, so that
    `weights @ values` integrates a sampled function over the grid span.
    """

    points: np.ndarray
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        pts = _as_float_vector(self.points, "grid points")
        if pts.size < 2:
            raise DimensionError("a grid needs at least 2 points")
        if not np.all(np.diff(pts) > 0):
            raise DomainError("grid points must be strictly increasing")
        pts.setflags(write=False)
        w = np.empty_like(pts)
        w[0] = (pts[1] - pts[0]) / 2.0
        w[-1] = (pts[-1] - pts[-2]) / 2.0
        w[1:-1] = (pts[2:] - pts[:-2]) / 2.0
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return self.points.size

    @property
    def a(self) -> float:
        return float(self.points[0])

    @property
    def b(self) -> float:
        return float(self.points[-1])

    def matches(self, other: "Grid") -> bool:
        return self.points.shape == other.points.shape and bool(
            np.array_equal(self.points, other.points)
        )


def default_grid(n_points: int = 101, a: float = -1.0, b: float = 1.0) -> Grid:
    """Equispaced grid used by the simulation models (101 points on [-1, 1])."""
    return Grid(np.linspace(a, b, n_points))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """One sampled function on a grid; the unit of classification."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = _as_float_vector(self.values, "trajectory values")
        if vals.size != len(self.grid):
            raise DimensionError(
                f"trajectory has {vals.size} values for a {len(self.grid)}-point grid"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True, eq=False)
class LabeledSample:
    """Trajectories on a shared grid with binary labels (0 negative, 1 positive)."""

    grid: Grid
    values: np.ndarray  # shape (n, m), one row per trajectory
    labels: np.ndarray  # shape (n,), entries in {0, 1}

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 2:
            raise DimensionError(f"sample values must be 2-d, got shape {vals.shape}")
        if vals.shape[1] != len(self.grid):
            raise DimensionError(
                f"sample rows have {vals.shape[1]} values for a {len(self.grid)}-point grid"
            )
        if vals.shape[0] == 0:
            raise DimensionError("sample is empty")
        if not np.all(np.isfinite(vals)):
            raise DomainError("sample values contain non-finite entries")
        labels = np.asarray(self.labels)
        if labels.shape != (vals.shape[0],):
            raise DimensionError(
                f"labels shape {labels.shape} does not match {vals.shape[0]} trajectories"
            )
        if not np.all(np.isin(labels, (0, 1))):
            raise DomainError("labels must contain only 0 and 1")
        labels = labels.astype(np.int8)
        vals = np.ascontiguousarray(vals)
        vals.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return self.values.shape[0]

    @property
    def n0(self) -> int:
        return int(np.sum(self.labels == 0))

    @property
    def n1(self) -> int:
        return int(np.sum(self.labels == 1))

    @property
    def negative_indices(self) -> np.ndarray:
        return np.flatnonzero(self.labels == 0)

    @property
    def positive_indices(self) -> np.ndarray:
        return np.flatnonzero(self.labels == 1)

    def trajectory(self, i: int) -> Trajectory:
        return Trajectory(self.grid, self.values[i])

    def subset(self, indices) -> "LabeledSample":
        idx = np.asarray(indices, dtype=np.intp)
        return LabeledSample(self.grid, self.values[idx].copy(), self.labels[idx].copy())


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric matrix of pairwise squared-L2 distances, zero diagonal."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=np.float64)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise DimensionError(f"distance matrix must be square, got shape {e.shape}")
        object.__setattr__(self, "entries", e)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def integrate(values, grid: Grid) -> float:
    """Composite-trapezoid integral of sampled values over the grid span."""
    vals = _as_float_vector(values, "integrand values")
    if vals.size != len(grid):
        raise DimensionError(
            f"integrand has {vals.size} values for a {len(grid)}-point grid"
        )
    return float(grid.weights @ vals)


def l2_distance(f: Trajectory, g: Trajectory) -> float:
    """Squared-L2 distance between two trajectories on the same grid."""
    if not f.grid.matches(g.grid):
        raise DimensionError("trajectories are on different grids; resample first")
    diff = f.values - g.values
    return float(f.grid.weights @ (diff * diff))


def distance_matrix(sample: LabeledSample) -> DistanceMatrix:
    """All pairwise squared-L2 distances within a sample."""
    d = _backend.sq_l2_matrix(sample.values, sample.grid.weights)
    return DistanceMatrix(d)


def cross_distances(a_values: np.ndarray, b_values: np.ndarray, grid: Grid) -> np.ndarray:
    """Squared-L2 distances between every row of `a_values` and of `b_values`."""
    a = np.ascontiguousarray(a_values, dtype=np.float64)
    b = np.ascontiguousarray(b_values, dtype=np.float64)
    if a.ndim == 1:
        a = a[None, :]
    if b.ndim == 1:
        b = b[None, :]
    if a.shape[1] != len(grid) or b.shape[1] != len(grid):
        raise DimensionError("row length does not match the grid")
    return _backend.sq_l2_cross(a, b, grid.weights)


def resample(f: Trajectory, target: Grid) -> Trajectory:
    """Linear interpolation of a trajectory onto a new grid (no extrapolation)."""
    src = f.grid
    if target.a < src.a or target.b > src.b:
        raise RangeError(
            f"target grid [{target.a}, {target.b}] extends beyond the observed "
            f"range [{src.a}, {src.b}]"
        )
    if src.matches(target):
        return Trajectory(target, f.values.copy())
    return Trajectory(target, np.interp(target.points, src.points, f.values))
