"""Probability scores for labeled trajectory samples.

A trajectory's score is the fraction of (positive, negative) training
pairs for which its transformed distance to the positive member is
below its transformed distance to the negative member, ties counting
1/2. Within a sample the score is computed leave-one-out; against a
persisted system, new trajectories are scored over all system pairs.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .core import Grid, LabeledSample, Trajectory, cross_distances, distance_matrix
from .errors import (
    DimensionError,
    DomainError,
    InsufficientDataError,
    ParseError,
)
from .roc import Ecdf, ecdf_quantile
from .transforms import TransformSpec, nearest_gap

FORMAT_VERSION = 1


@dataclass(frozen=True, eq=False)
class SampleSystem:
    """A training sample plus the transform used to score against it."""

    sample: LabeledSample
    transform: TransformSpec = field(default_factory=TransformSpec)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.sample.n0 < 1 or self.sample.n1 < 1:
            raise InsufficientDataError(
                "a system needs at least one trajectory of each class"
            )

    @property
    def grid(self) -> Grid:
        return self.sample.grid


@dataclass(frozen=True, eq=False)
class ScoreSet:
    """Scores in [0,1] with their class labels, in sample order."""

    scores: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int8)
        if scores.shape != labels.shape or scores.ndim != 1:
            raise DimensionError("scores and labels must be matching 1-d arrays")
        if scores.size and (np.min(scores) < 0.0 or np.max(scores) > 1.0
                            or not np.all(np.isfinite(scores))):
            raise DomainError("scores must lie in [0, 1]")
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "labels", labels)

    @property
    def negatives(self) -> np.ndarray:
        return self.scores[self.labels == 0]

    @property
    def positives(self) -> np.ndarray:
        return self.scores[self.labels == 1]


def _drop_diagonal(block: np.ndarray) -> np.ndarray:
    k = block.shape[0]
    return np.ascontiguousarray(
        block[~np.eye(k, dtype=bool)].reshape(k, k - 1)
    )


def _pair_fractions(dist_pos: np.ndarray, dist_neg: np.ndarray,
                    transform: TransformSpec, anchors=None) -> np.ndarray:
    """Row-wise pair fraction; each row is one scored function.

    anchors is only consulted by positive_profile: either one sorted
    array shared by all rows, or a sequence with one sorted array per
    row (leave-one-out positives each exclude their own pairs).
    """
    if transform.kind == "identity":
        hp, hn = dist_pos, dist_neg
    elif transform.kind == "subgroup_proximity":
        folds = np.quantile(dist_pos, transform.tau, axis=1)
        hp = np.abs(dist_pos - folds[:, None])
        hn = np.abs(dist_neg - folds[:, None])
    else:
        if anchors is None:
            raise InsufficientDataError(
                "positive_profile needs the positive group's internal distances"
            )
        if isinstance(anchors, np.ndarray):
            hp = nearest_gap(dist_pos, anchors)
            hn = nearest_gap(dist_neg, anchors)
        else:
            hp = np.empty_like(dist_pos)
            hn = np.empty_like(dist_neg)
            for r, ref in enumerate(anchors):
                hp[r] = nearest_gap(dist_pos[r], ref)
                hn[r] = nearest_gap(dist_neg[r], ref)
    counts = _backend.count_below_rows(
        np.ascontiguousarray(hp), np.ascontiguousarray(hn)
    )
    return counts / (dist_pos.shape[1] * dist_neg.shape[1])


def _internal_positive_distances(D: np.ndarray, pos_idx: np.ndarray) -> np.ndarray:
    """Sorted off-diagonal entries of the positive-positive block."""
    block = D[np.ix_(pos_idx, pos_idx)]
    k = block.shape[0]
    return np.sort(block[~np.eye(k, dtype=bool)])


def loo_scores(sample: LabeledSample, transform: TransformSpec | None = None) -> ScoreSet:
    """Leave-one-out probability score for every trajectory in a sample.

    For trajectory i the remaining sample acts as the system: distances
    to all others, transform fitted on i's own positive-distance sample
    (i excluded when positive), pair fraction over the remaining
    (positive, negative) pairs. positive_profile fits on the positive
    class's internal distances instead, again excluding pairs that
    involve i. Denominators are (n0-1)*n1 for negative i and n0*(n1-1)
    for positive i, which self-exclusion yields on its own.
    """
    if transform is None:
        transform = TransformSpec()
    if sample.n0 < 2 or sample.n1 < 2:
        raise InsufficientDataError(
            "leave-one-out scoring needs at least two trajectories per class, "
            f"got n0={sample.n0}, n1={sample.n1}"
        )
    if transform.kind == "positive_profile" and sample.n1 < 3:
        raise InsufficientDataError(
            "positive_profile leave-one-out needs at least three positives; "
            "a held-out positive must leave an internal pair behind"
        )
    D = distance_matrix(sample).entries
    neg_idx = sample.negative_indices
    pos_idx = sample.positive_indices

    shared = per_row = None
    if transform.kind == "positive_profile":
        block = D[np.ix_(pos_idx, pos_idx)]
        k = block.shape[0]
        off = ~np.eye(k, dtype=bool)
        shared = np.sort(block[off])
        per_row = []
        for a in range(k):
            keep = np.ones(k, dtype=bool)
            keep[a] = False
            sub = block[np.ix_(keep, keep)]
            per_row.append(np.sort(sub[~np.eye(k - 1, dtype=bool)]))

    scores = np.empty(len(sample.labels), dtype=np.float64)
    # negative rows keep all positives, drop self among negatives
    dp = np.ascontiguousarray(D[np.ix_(neg_idx, pos_idx)])
    dn = _drop_diagonal(D[np.ix_(neg_idx, neg_idx)])
    scores[neg_idx] = _pair_fractions(dp, dn, transform, anchors=shared)
    # positive rows drop self among positives, keep all negatives
    dp = _drop_diagonal(D[np.ix_(pos_idx, pos_idx)])
    dn = np.ascontiguousarray(D[np.ix_(pos_idx, neg_idx)])
    scores[pos_idx] = _pair_fractions(dp, dn, transform, anchors=per_row)
    return ScoreSet(scores, sample.labels)


def score_many(system: SampleSystem, values: np.ndarray) -> np.ndarray:
    """Score each row of a values matrix against the system.

    Rows must already live on the system grid. Scoring is read-only on
    the system, so callers may fan rows out across threads, but one
    call is already vectorized over rows.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    if values.ndim != 2 or values.shape[1] != len(system.grid.points):
        raise DimensionError(
            "values must be (n, m) on the system grid; resample first"
        )
    sample = system.sample
    anchors = None
    if system.transform.kind == "positive_profile":
        if sample.n1 < 2:
            raise InsufficientDataError(
                "positive_profile needs at least two positives in the system"
            )
        pos_values = sample.values[sample.positive_indices]
        internal = cross_distances(pos_values, pos_values, system.grid)
        k = internal.shape[0]
        anchors = np.sort(internal[~np.eye(k, dtype=bool)])
    D = cross_distances(values, sample.values, system.grid)
    dp = np.ascontiguousarray(D[:, sample.positive_indices])
    dn = np.ascontiguousarray(D[:, sample.negative_indices])
    return _pair_fractions(dp, dn, system.transform, anchors=anchors)


def score_new(system: SampleSystem, f: Trajectory) -> float:
    """Probability score of one new trajectory against the system."""
    if not f.grid.matches(system.grid):
        raise DimensionError(
            "trajectory grid does not match the system grid; resample first"
        )
    return float(score_many(system, f.values[None, :])[0])


def classify(system: SampleSystem, f: Trajectory, p: float, neg_scores) -> int:
    """Label f positive iff its score exceeds the (1-p) negative quantile.

    neg_scores is the system's negative score distribution (typically
    leave-one-out scores of the training negatives); thresholding on it
    keeps the training false-positive fraction at most p, with the
    optimistic bias of reusing training data.
    """
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"false-positive level must lie in [0, 1], got {p!r}")
    threshold = ecdf_quantile(Ecdf(neg_scores), 1.0 - p)
    return int(score_new(system, f) > threshold)


def feed_system(system: SampleSystem, f: Trajectory, label: int) -> SampleSystem:
    """Return a new system with one labeled trajectory appended."""
    if not f.grid.matches(system.grid):
        raise DimensionError(
            "trajectory grid does not match the system grid; resample first"
        )
    label = int(label)
    if label not in (0, 1):
        raise DomainError(f"label must be 0 or 1, got {label!r}")
    sample = system.sample
    values = np.vstack([sample.values, f.values[None, :]])
    labels = np.concatenate([sample.labels, [label]])
    return SampleSystem(
        sample=LabeledSample(sample.grid, values, labels),
        transform=system.transform,
        meta=dict(system.meta),
    )


def save_system(system: SampleSystem, path) -> None:
    """Write a system as a self-describing JSON document.

    Floats are serialized with shortest round-trip decimals, so a
    load(save(s)) round-trip reproduces every value bit for bit.
    """
    sample = system.sample
    doc = {
        "version": FORMAT_VERSION,
        "grid": [float(t) for t in sample.grid.points],
        "labels": [int(x) for x in sample.labels],
        "values": [[float(v) for v in row] for row in sample.values],
        "transform": {"kind": system.transform.kind, "tau": system.transform.tau},
        "meta": {
            "seed": system.meta.get("seed"),
            "note": system.meta.get("note", ""),
        },
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_system(path) -> SampleSystem:
    """Read a system written by save_system."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object at top level")
    for field_name in ("version", "grid", "labels", "values", "transform"):
        if field_name not in doc:
            raise ParseError(f"{path}: missing field {field_name!r}")
    if doc["version"] != FORMAT_VERSION:
        raise ParseError(
            f"{path}: unsupported version {doc['version']!r}, "
            f"expected {FORMAT_VERSION}"
        )
    tr = doc["transform"]
    if not isinstance(tr, dict) or "kind" not in tr:
        raise ParseError(f"{path}: field 'transform' must carry 'kind'")
    try:
        grid = Grid(np.asarray(doc["grid"], dtype=np.float64))
        sample = LabeledSample(
            grid,
            np.asarray(doc["values"], dtype=np.float64),
            np.asarray(doc["labels"]),
        )
        transform = TransformSpec(tr["kind"], tr.get("tau", 0.5))
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    meta = doc.get("meta") or {}
    return SampleSystem(sample=sample, transform=transform, meta=dict(meta))
