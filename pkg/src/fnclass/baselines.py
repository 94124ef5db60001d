"""Scalar reduction criteria: classify curves by min, max, or integral.

These are the standard comparators: reduce each trajectory to one
number, then rank. The direction a reducer discriminates in depends on
the data (e.g. smaller minima may mark positives), so the headline AUC
is orientation-corrected to max(A, 1-A) with the raw directed value
kept alongside.
"""

from dataclasses import dataclass

import numpy as np

from .core import Grid, LabeledSample, Trajectory
from .errors import InsufficientDataError, SpecError
from .roc import AucEstimate, auc, auc_ci

REDUCERS = ("min", "max", "int")


def reduce_values(values: np.ndarray, grid: Grid, kind: str) -> np.ndarray:
    """Reduce each row of a values matrix to one scalar."""
    if kind not in REDUCERS:
        raise SpecError(f"unknown reducer {kind!r}; expected one of {REDUCERS}")
    values = np.atleast_2d(np.asarray(values, dtype=np.float64))
    if kind == "min":
        return np.min(values, axis=1)
    if kind == "max":
        return np.max(values, axis=1)
    return values @ grid.weights


def reduce(f: Trajectory, kind: str) -> float:
    """Reduce one trajectory: min/max of its values or its integral."""
    return float(reduce_values(f.values[None, :], f.grid, kind)[0])


@dataclass(frozen=True)
class BaselineResult:
    """Orientation-corrected AUC of a reducer, with the raw direction."""

    kind: str
    estimate: AucEstimate  # for the oriented marker, auc >= 0.5
    raw_auc: float         # directed: positives-high convention
    flipped: bool          # True when the oriented marker negates the reducer


def baseline_auc(sample: LabeledSample, kind: str,
                 level: float = 0.95) -> BaselineResult:
    """Whole-sample reducer AUC with CI, oriented to be >= 0.5.

    When the directed AUC falls below 0.5 the reducer separates in the
    opposite direction; the reported estimate then belongs to the
    negated reducer (exactly 1 - raw under the 1/2-tie convention) and
    `flipped` records that.
    """
    if sample.n0 < 1 or sample.n1 < 1:
        raise InsufficientDataError(
            f"baseline AUC needs both classes, got n0={sample.n0}, n1={sample.n1}"
        )
    reduced = reduce_values(sample.values, sample.grid, kind)
    neg = reduced[sample.labels == 0]
    pos = reduced[sample.labels == 1]
    raw = auc(neg, pos)
    flipped = raw < 0.5
    if flipped:
        estimate = auc_ci(-neg, -pos, level)
    else:
        estimate = auc_ci(neg, pos, level)
    return BaselineResult(kind=kind, estimate=estimate, raw_auc=raw, flipped=flipped)
