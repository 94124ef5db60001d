"""Distance transforms applied before the pairwise comparison.

Before comparing a function's distances to the positive and negative
training groups, each distance may be remapped by a fitted transform.

``identity`` leaves the scale alone (plain one-sided comparison).

``subgroup_proximity`` folds the scale around a quantile anchor,
``h(x) = |x - q_tau(dist_pos)|``, fitted on the scored function's own
positive-distance sample.

``positive_profile`` is fitted once per training set, on the positive
group's internal pairwise distances, and maps a distance to its gap
from the nearest of those values: ``h(x) = min_k |x - w_k|``. A scored
function whose positive-distance sample looks like the distances
positives have among themselves (small within a subgroup, possibly
large across subgroups) transforms to near zero everywhere, while
distances typical of cross-group pairs land far from every anchor.
This keeps the comparison oriented even when the positive group is a
mixture and no single fold point separates it.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InsufficientDataError, SpecError

KINDS = ("identity", "subgroup_proximity", "positive_profile")


@dataclass(frozen=True)
class TransformSpec:
    """Which transform to fit, and its quantile parameter.

    tau is only consulted by subgroup_proximity; it stays part of the
    spec either way so serialized systems round-trip without special
    cases.
    """

    kind: str = "identity"
    tau: float = 0.5

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(
                f"unknown transform kind {self.kind!r}; expected one of {KINDS}"
            )
        tau = float(self.tau)
        if not (0.0 <= tau <= 1.0) or not np.isfinite(tau):
            raise DomainError(f"tau must lie in [0, 1], got {self.tau!r}")
        object.__setattr__(self, "tau", tau)


@dataclass(frozen=True, eq=False)
class FittedTransform:
    """A transform ready to apply.

    anchor is the fold point for subgroup_proximity; anchors is the
    sorted reference sample for positive_profile. Both are None for
    identity.
    """

    kind: str
    anchor: float | None = None
    anchors: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(
                f"unknown transform kind {self.kind!r}; expected one of {KINDS}"
            )
        if self.kind == "subgroup_proximity":
            if self.anchor is None:
                raise SpecError("subgroup_proximity requires a fitted anchor")
            anchor = float(self.anchor)
            if not np.isfinite(anchor) or anchor < 0.0:
                raise DomainError(
                    f"anchor must be a nonnegative real, got {self.anchor!r}"
                )
            object.__setattr__(self, "anchor", anchor)
        elif self.kind == "positive_profile":
            if self.anchors is None or np.asarray(self.anchors).size == 0:
                raise SpecError("positive_profile requires fitted anchors")


def _checked(dist, label):
    d = np.asarray(dist, dtype=np.float64).ravel()
    if d.size == 0:
        raise InsufficientDataError(f"{label} needs a nonempty distance sample")
    if not np.all(np.isfinite(d)) or np.any(d < 0.0):
        raise DomainError("distances must be finite and nonnegative")
    return d


def fit_transform(dist_pos, spec: TransformSpec) -> FittedTransform:
    """Fit a transform from a distance sample.

    identity ignores the sample entirely. subgroup_proximity anchors at
    the empirical tau-quantile (linear interpolation between order
    statistics) of the scored function's distances to the positive
    group. positive_profile expects the positive group's internal
    pairwise distances instead and keeps the whole sorted sample.
    """
    if spec.kind == "identity":
        return FittedTransform("identity")
    if spec.kind == "subgroup_proximity":
        d = _checked(dist_pos, "subgroup_proximity")
        anchor = float(np.quantile(d, spec.tau))
        return FittedTransform("subgroup_proximity", anchor)
    d = np.sort(_checked(dist_pos, "positive_profile"))
    d.setflags(write=False)
    return FittedTransform("positive_profile", anchors=d)


def nearest_gap(x, anchors: np.ndarray):
    """Distance from each x to the closest value in a sorted sample."""
    xs = np.asarray(x, dtype=np.float64)
    idx = np.searchsorted(anchors, xs)
    left = np.where(idx > 0, xs - anchors[np.maximum(idx - 1, 0)], np.inf)
    hi = np.minimum(idx, anchors.size - 1)
    right = np.where(idx < anchors.size, anchors[hi] - xs, np.inf)
    return np.minimum(left, right)


def apply_transform(h: FittedTransform, x):
    """Apply a fitted transform to a distance or an array of distances."""
    if h.kind == "identity":
        return x
    if h.kind == "subgroup_proximity":
        return np.abs(np.asarray(x, dtype=np.float64) - h.anchor)
    return nearest_gap(x, h.anchors)
