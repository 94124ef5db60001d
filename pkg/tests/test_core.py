"""Grids, trajectories, integration, and distance kernels."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from fnclass import (
    DimensionError,
    DistanceMatrix,
    DomainError,
    Grid,
    LabeledSample,
    RangeError,
    Trajectory,
    cross_distances,
    default_grid,
    distance_matrix,
    integrate,
    l2_distance,
    resample,
)

from .oracles import sq_l2, trapezoid_integral

finite = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)


def values_on(n):
    return hnp.arrays(np.float64, n, elements=finite)


# ---------------------------------------------------------------- grids

def test_default_grid_shape():
    g = default_grid()
    assert len(g) == 101
    assert g.a == -1.0 and g.b == 1.0
    assert np.all(np.diff(g.points) > 0)


def test_grid_weights_sum_to_span(grid_uneven):
    # trapezoid weights integrate the constant 1 exactly
    assert grid_uneven.weights.sum() == pytest.approx(2.0, abs=1e-15)


def test_grid_rejects_bad_points():
    with pytest.raises(DimensionError):
        Grid(np.array([1.0]))
    with pytest.raises(DomainError):
        Grid(np.array([0.0, 0.0, 1.0]))
    with pytest.raises(DomainError):
        Grid(np.array([0.0, np.nan, 1.0]))
    with pytest.raises(DimensionError):
        Grid(np.zeros((2, 2)))


def test_grid_arrays_are_frozen():
    g = default_grid()
    with pytest.raises(ValueError):
        g.points[0] = 5.0
    with pytest.raises(ValueError):
        g.weights[0] = 5.0


def test_grid_matches():
    a = default_grid()
    b = default_grid()
    c = default_grid(51)
    assert a.matches(b)
    assert not a.matches(c)


# ---------------------------------------------------------- integration

def test_integrate_matches_loop_oracle(grid_uneven):
    rng = np.random.default_rng(3)
    v = rng.normal(size=len(grid_uneven))
    expect = trapezoid_integral(v, grid_uneven.points)
    assert integrate(v, grid_uneven) == pytest.approx(expect, rel=1e-14)


def test_integrate_is_exact_for_linear_functions(grid_uneven):
    # the trapezoid rule has no error on piecewise-linear integrands
    t = grid_uneven.points
    assert integrate(2.0 * t + 1.0, grid_uneven) == pytest.approx(
        (t[-1] ** 2 - t[0] ** 2) + (t[-1] - t[0]), rel=1e-14
    )


@given(values_on(5), values_on(5), finite, finite)
def test_integrate_is_linear(u, v, a, b):
    g = Grid(np.array([0.0, 0.3, 0.7, 1.1, 2.0]))
    lhs = integrate(a * u + b * v, g)
    rhs = a * integrate(u, g) + b * integrate(v, g)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


# ------------------------------------------------------------ distances

def test_l2_distance_against_oracle(grid_uneven):
    rng = np.random.default_rng(7)
    f = Trajectory(grid_uneven, rng.normal(size=len(grid_uneven)))
    g = Trajectory(grid_uneven, rng.normal(size=len(grid_uneven)))
    assert l2_distance(f, g) == pytest.approx(
        sq_l2(f.values, g.values, grid_uneven.points), rel=1e-12
    )


def test_l2_distance_requires_shared_grid():
    f = Trajectory(default_grid(), np.zeros(101))
    g = Trajectory(default_grid(51), np.zeros(51))
    with pytest.raises(DimensionError):
        l2_distance(f, g)


def test_distance_matrix_against_pairwise_oracle(sample_factory):
    rng = np.random.default_rng(11)
    values = rng.normal(size=(6, 9))
    s = sample_factory(values, [0, 0, 0, 1, 1, 1])
    d = distance_matrix(s)
    for i in range(6):
        for j in range(6):
            assert d.entries[i, j] == pytest.approx(
                sq_l2(values[i], values[j], s.grid.points), rel=1e-12, abs=1e-15
            )


@given(st.integers(2, 7), st.integers(0, 2**31))
def test_distance_matrix_symmetry_and_zero_diagonal(n, seed):
    rng = np.random.default_rng(seed)
    values = rng.normal(size=(n, 8))
    s = LabeledSample(Grid(np.linspace(0, 1, 8)), values, np.zeros(n, dtype=int))
    d = distance_matrix(s).entries
    assert np.array_equal(d, d.T)
    assert np.all(np.diag(d) == 0.0)
    assert np.all(d >= 0.0)


def test_cross_distances_against_oracle():
    rng = np.random.default_rng(13)
    g = default_grid(9)
    a = rng.normal(size=(3, 9))
    b = rng.normal(size=(4, 9))
    d = cross_distances(a, b, g)
    assert d.shape == (3, 4)
    for i in range(3):
        for j in range(4):
            assert d[i, j] == pytest.approx(
                sq_l2(a[i], b[j], g.points), rel=1e-12, abs=1e-15
            )


def test_distance_matrix_requires_square():
    with pytest.raises(DimensionError):
        DistanceMatrix(np.zeros((2, 3)))


# --------------------------------------------------------------- sample

def test_labeled_sample_counts_and_indices(sample_factory):
    s = sample_factory(np.zeros((5, 3)), [1, 0, 1, 0, 0])
    assert len(s) == 5
    assert s.n0 == 3 and s.n1 == 2
    assert list(s.negative_indices) == [1, 3, 4]
    assert list(s.positive_indices) == [0, 2]


def test_labeled_sample_validation(sample_factory):
    with pytest.raises(DomainError):
        sample_factory(np.zeros((2, 3)), [0, 2])
    with pytest.raises(DimensionError):
        sample_factory(np.zeros((2, 3)), [0])
    with pytest.raises(DomainError):
        sample_factory(np.array([[0.0, np.inf, 0.0]]), [0])
    with pytest.raises(DimensionError):
        LabeledSample(Grid(np.linspace(0, 1, 4)), np.zeros((2, 3)), np.array([0, 1]))


def test_labeled_sample_subset_and_trajectory(sample_factory):
    values = np.arange(12.0).reshape(4, 3)
    s = sample_factory(values, [0, 1, 0, 1])
    sub = s.subset([1, 3])
    assert sub.n1 == 2 and sub.n0 == 0
    assert np.array_equal(sub.values, values[[1, 3]])
    f = s.trajectory(2)
    assert np.array_equal(f.values, values[2])
    assert f.grid.matches(s.grid)


def test_labeled_sample_arrays_are_frozen(sample_factory):
    s = sample_factory(np.zeros((2, 3)), [0, 1])
    with pytest.raises(ValueError):
        s.values[0, 0] = 1.0
    with pytest.raises(ValueError):
        s.labels[0] = 1


# ------------------------------------------------------------- resample

def test_resample_identity_on_matching_grid():
    g = default_grid(11)
    f = Trajectory(g, np.sin(g.points))
    out = resample(f, default_grid(11))
    assert np.array_equal(out.values, f.values)


def test_resample_linear_is_exact():
    src = Grid(np.linspace(0.0, 1.0, 6))
    dst = Grid(np.array([0.05, 0.3, 0.9]))
    f = Trajectory(src, 3.0 * src.points - 1.0)
    out = resample(f, dst)
    assert out.values == pytest.approx(3.0 * dst.points - 1.0, rel=1e-14)


def test_resample_refuses_extrapolation():
    f = Trajectory(Grid(np.linspace(0.0, 1.0, 5)), np.zeros(5))
    with pytest.raises(RangeError):
        resample(f, Grid(np.array([-0.1, 0.5])))
    with pytest.raises(RangeError):
        resample(f, Grid(np.array([0.5, 1.5])))
