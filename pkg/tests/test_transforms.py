"""Distance comparison transforms: fitting and folding."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fnclass import (
    DomainError,
    FittedTransform,
    InsufficientDataError,
    SpecError,
    TransformSpec,
    apply_transform,
    fit_transform,
)
from fnclass.transforms import nearest_gap

from . import oracles

dists = st.lists(st.floats(min_value=0.0, max_value=100.0), min_size=1, max_size=40)


def test_spec_validation():
    TransformSpec("identity")
    TransformSpec("subgroup_proximity", tau=0.25)
    TransformSpec("positive_profile")
    with pytest.raises(SpecError):
        TransformSpec("nearest")
    with pytest.raises(DomainError):
        TransformSpec("subgroup_proximity", tau=1.5)
    with pytest.raises(DomainError):
        TransformSpec("subgroup_proximity", tau=-0.01)


def test_identity_passes_values_through():
    h = fit_transform([3.0, 1.0], TransformSpec("identity"))
    x = np.array([0.0, 2.5, 9.0])
    assert np.array_equal(apply_transform(h, x), x)
    assert apply_transform(h, 4.25) == 4.25


def test_subgroup_anchor_is_the_median_of_five():
    h = fit_transform([1.0, 2.0, 3.0, 4.0, 5.0], TransformSpec("subgroup_proximity"))
    assert h.anchor == 3.0
    # folding is symmetric about the anchor
    assert apply_transform(h, 1.0) == 2.0
    assert apply_transform(h, 5.0) == 2.0
    assert apply_transform(h, 3.0) == 0.0


def test_subgroup_anchor_lands_in_the_gap_of_a_bimodal_sample():
    rng = np.random.default_rng(5)
    d = np.concatenate([rng.uniform(0.0, 0.2, 100), rng.uniform(5.0, 6.0, 100)])
    h = fit_transform(d, TransformSpec("subgroup_proximity"))
    assert 0.2 <= h.anchor <= 5.0


@given(dists, st.floats(min_value=0.0, max_value=1.0))
def test_subgroup_anchor_matches_linear_quantile_oracle(d, tau):
    h = fit_transform(d, TransformSpec("subgroup_proximity", tau=tau))
    assert h.anchor == pytest.approx(oracles.quantile_linear(d, tau), rel=1e-12, abs=1e-12)


@given(dists, st.floats(min_value=0.0, max_value=100.0))
def test_subgroup_fold_is_nonnegative_and_zero_at_anchor(d, x):
    h = fit_transform(d, TransformSpec("subgroup_proximity"))
    assert apply_transform(h, x) >= 0.0
    assert apply_transform(h, h.anchor) == 0.0


def test_profile_fit_sorts_and_freezes_anchors():
    h = fit_transform([4.0, 1.0, 2.5], TransformSpec("positive_profile"))
    assert np.array_equal(h.anchors, [1.0, 2.5, 4.0])
    with pytest.raises(ValueError):
        h.anchors[0] = 0.0


def test_profile_fold_hand_case():
    h = fit_transform([1.0, 4.0], TransformSpec("positive_profile"))
    got = apply_transform(h, np.array([0.0, 1.0, 2.0, 3.5, 4.5, 10.0]))
    assert got == pytest.approx([1.0, 0.0, 1.0, 0.5, 0.5, 6.0])


@given(dists, st.floats(min_value=-10.0, max_value=110.0))
def test_nearest_gap_matches_min_over_anchors(d, x):
    anchors = np.sort(np.asarray(d, dtype=np.float64))
    got = nearest_gap(x, anchors)
    assert got == pytest.approx(oracles.nearest_gap(x, d), rel=1e-12, abs=0.0)
    # min property: no anchor is closer than the reported gap
    assert np.all(np.abs(x - anchors) >= got - 1e-15)


def test_nearest_gap_is_zero_exactly_on_anchors():
    anchors = np.array([0.5, 1.0, 7.0])
    assert np.array_equal(nearest_gap(anchors, anchors), np.zeros(3))


def test_fit_rejects_bad_inputs():
    sgp = TransformSpec("subgroup_proximity")
    with pytest.raises(InsufficientDataError):
        fit_transform([], sgp)
    with pytest.raises(DomainError):
        fit_transform([1.0, -0.5], sgp)
    with pytest.raises(DomainError):
        fit_transform([1.0, np.nan], sgp)
    with pytest.raises(InsufficientDataError):
        fit_transform([], TransformSpec("positive_profile"))


def test_fitted_transform_validation():
    with pytest.raises(SpecError):
        FittedTransform("banana")
    with pytest.raises(SpecError):
        FittedTransform("subgroup_proximity", anchor=None)
    with pytest.raises(DomainError):
        FittedTransform("subgroup_proximity", anchor=-1.0)
    with pytest.raises(SpecError):
        FittedTransform("positive_profile", anchors=np.array([]))
