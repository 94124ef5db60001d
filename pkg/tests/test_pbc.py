"""Pair-comparison scoring: leave-one-out, new-curve scoring, persistence."""

from __future__ import annotations

import json

import numpy as np
import pytest

from fnclass import (
    DimensionError,
    DomainError,
    InsufficientDataError,
    LabeledSample,
    ParseError,
    SampleSystem,
    ScoreSet,
    TransformSpec,
    classify,
    feed_system,
    load_system,
    loo_scores,
    save_system,
    score_many,
    score_new,
)

from . import oracles
from .conftest import make_sample

KINDS = ("identity", "subgroup_proximity", "positive_profile")


def random_sample(rng, n0, n1, m=7):
    values = rng.normal(size=(n0 + n1, m))
    labels = np.array([0] * n0 + [1] * n1)
    perm = rng.permutation(n0 + n1)
    return make_sample(values[perm], labels[perm], np.sort(rng.uniform(0, 1, m)))


# ------------------------------------------------------------ loo scores

@pytest.mark.parametrize("kind", KINDS)
def test_loo_scores_match_exhaustive_enumeration(kind):
    rng = np.random.default_rng(29)
    for trial in range(8):
        n0 = int(rng.integers(2, 6))
        n1 = int(rng.integers(3 if kind == "positive_profile" else 2, 6))
        s = random_sample(rng, n0, n1)
        got = loo_scores(s, TransformSpec(kind))
        want = oracles.loo_scores_ref(s.values, s.labels, s.grid.points, kind)
        assert np.array_equal(got.scores, want), f"trial {trial} ({n0},{n1})"


def test_loo_scoreset_splits_by_label():
    rng = np.random.default_rng(31)
    s = random_sample(rng, 4, 3)
    out = loo_scores(s)
    assert out.scores.shape == (7,)
    assert np.array_equal(out.negatives, out.scores[s.negative_indices])
    assert np.array_equal(out.positives, out.scores[s.positive_indices])
    assert np.all((out.scores >= 0.0) & (out.scores <= 1.0))


def test_loo_identical_curves_score_half_exactly():
    s = make_sample(np.ones((6, 5)), [0, 0, 0, 1, 1, 1])
    out = loo_scores(s)
    assert np.all(out.scores == 0.5)


def test_loo_label_swap_sends_scores_to_their_complement():
    rng = np.random.default_rng(37)
    s = random_sample(rng, 4, 5)
    swapped = LabeledSample(s.grid, s.values, 1 - s.labels)
    a = loo_scores(s).scores
    b = loo_scores(swapped).scores
    # exact at the pair-count level: a and b share denominators
    denom = np.where(s.labels == 0, (s.n0 - 1) * s.n1, s.n0 * (s.n1 - 1))
    assert np.array_equal(a * denom + b * denom, denom.astype(float))


def test_loo_profile_needs_three_positives():
    rng = np.random.default_rng(41)
    s = random_sample(rng, 4, 2)
    with pytest.raises(InsufficientDataError):
        loo_scores(s, TransformSpec("positive_profile"))


def test_loo_needs_two_per_class():
    s = make_sample(np.zeros((3, 4)), [0, 0, 1])
    with pytest.raises(InsufficientDataError):
        loo_scores(s)


# ------------------------------------------------------- scoring new data

@pytest.mark.parametrize("kind", KINDS)
def test_score_new_matches_enumeration(kind):
    rng = np.random.default_rng(43)
    train = random_sample(rng, 5, 4)
    system = SampleSystem(train, TransformSpec(kind))
    f = train.trajectory(0)
    fresh = rng.normal(size=len(train.grid))
    for vals in (f.values, fresh):
        from fnclass import Trajectory

        got = score_new(system, Trajectory(train.grid, vals))
        want = oracles.score_new_ref(train.values, train.labels,
                                     train.grid.points, vals, kind)
        assert got == want


def test_score_many_matches_score_new():
    rng = np.random.default_rng(47)
    train = random_sample(rng, 4, 4)
    system = SampleSystem(train, TransformSpec("positive_profile"))
    batch = rng.normal(size=(6, len(train.grid)))
    many = score_many(system, batch)
    from fnclass import Trajectory

    singles = [score_new(system, Trajectory(train.grid, row)) for row in batch]
    assert np.array_equal(many, singles)


def test_score_separated_classes_hits_the_extremes():
    # positives cluster at 10, negatives at 0; a new curve near the
    # positives beats every (positive, negative) pair
    base = np.zeros(5)
    values = np.vstack([base, base + 0.1, base + 10.0, base + 10.1])
    s = make_sample(values, [0, 0, 1, 1])
    system = SampleSystem(s)
    from fnclass import Trajectory

    near_pos = Trajectory(s.grid, base + 10.05)
    near_neg = Trajectory(s.grid, base + 0.05)
    assert score_new(system, near_pos) == 1.0
    assert score_new(system, near_neg) == 0.0


def test_classify_thresholds_on_negative_quantile():
    rng = np.random.default_rng(53)
    train = random_sample(rng, 5, 5)
    system = SampleSystem(train)
    neg_scores = np.array([0.1, 0.2, 0.3, 0.4, 0.5])
    f = train.trajectory(0)
    s = score_new(system, f)
    # p = 0.2 puts the threshold at the 0.8-quantile step, i.e. 0.4
    assert classify(system, f, 0.2, neg_scores) == int(s > 0.4)
    with pytest.raises(DomainError):
        classify(system, f, 1.5, neg_scores)


def test_score_profile_needs_two_positives():
    s = make_sample(np.random.default_rng(3).normal(size=(3, 4)), [0, 0, 1])
    system = SampleSystem(s, TransformSpec("positive_profile"))
    with pytest.raises(InsufficientDataError):
        score_many(system, s.values)


def test_scoreset_validation():
    with pytest.raises(DomainError):
        ScoreSet(np.array([0.2, 1.4]), np.array([0, 1]))
    with pytest.raises(DimensionError):
        ScoreSet(np.array([0.2, 0.4]), np.array([0]))


# ------------------------------------------------------------ persistence

def test_save_load_round_trip(tmp_path):
    rng = np.random.default_rng(59)
    train = random_sample(rng, 3, 4)
    system = SampleSystem(train, TransformSpec("subgroup_proximity", tau=0.3),
                          meta={"seed": 7, "note": "round trip"})
    path = tmp_path / "system.json"
    save_system(system, path)
    back = load_system(path)
    assert np.array_equal(back.sample.values, train.values)
    assert np.array_equal(back.sample.labels, train.labels)
    assert np.array_equal(back.grid.points, train.grid.points)
    assert back.transform == system.transform
    assert back.meta == system.meta
    # scores must survive the trip bit for bit
    assert np.array_equal(loo_scores(back.sample, back.transform).scores,
                          loo_scores(train, system.transform).scores)


def test_load_rejects_missing_fields(tmp_path):
    rng = np.random.default_rng(61)
    train = random_sample(rng, 2, 2)
    path = tmp_path / "system.json"
    save_system(SampleSystem(train), path)
    good = json.loads(path.read_text())
    for field in ("version", "grid", "labels", "values", "transform"):
        bad = dict(good)
        del bad[field]
        p = tmp_path / f"missing_{field}.json"
        p.write_text(json.dumps(bad))
        with pytest.raises(ParseError):
            load_system(p)
    p = tmp_path / "garbage.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        load_system(p)
    wrong = dict(good, version=99)
    p = tmp_path / "version.json"
    p.write_text(json.dumps(wrong))
    with pytest.raises(ParseError):
        load_system(p)


def test_feed_system_appends_without_mutating(tmp_path):
    rng = np.random.default_rng(67)
    train = random_sample(rng, 2, 2)
    system = SampleSystem(train)
    f = train.trajectory(0)
    grown = feed_system(system, f, 1)
    assert len(grown.sample) == 5
    assert grown.sample.labels[-1] == 1
    assert len(system.sample) == 4
    with pytest.raises(DomainError):
        feed_system(system, f, 2)
    from fnclass import Trajectory, default_grid

    alien = Trajectory(default_grid(9), np.zeros(9))
    with pytest.raises(DimensionError):
        feed_system(system, alien, 0)


def test_system_requires_both_classes():
    with pytest.raises(InsufficientDataError):
        SampleSystem(make_sample(np.zeros((2, 4)), [1, 1]))
