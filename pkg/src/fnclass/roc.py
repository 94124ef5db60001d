"""ROC curves, AUC, and asymptotic confidence intervals for score samples.

Scores are oriented so that positives tend high. The ROC value at a
false-positive level p is 1 - F_pos(F_neg^{-1}(1 - p)) with empirical
CDFs plugged in; the AUC is computed pairwise (Mann-Whitney with ties
counting 1/2), which equals the exact area under the empirical step
curve. The CI uses the normal limit of the sqrt(nc1)-scaled AUC with a
plug-in variance built from the two eCDFs evaluated over each other's
sample.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from . import _backend
from .errors import DomainError, InsufficientDataError

DEFAULT_P_GRID = np.linspace(0.0, 1.0, 201)


class Ecdf:
    """Empirical CDF of a one-dimensional sample.

    Evaluation is F(x) = #{s <= x} / n: right-continuous, nondecreasing,
    0 below the sample and 1 from the maximum on.
    """

    __slots__ = ("sorted_values", "n", "_f_at_sorted")

    def __init__(self, sample):
        values = np.asarray(sample, dtype=np.float64).ravel()
        if values.size == 0:
            raise InsufficientDataError("empty sample has no eCDF")
        if not np.all(np.isfinite(values)):
            raise DomainError("eCDF sample must be finite")
        self.sorted_values = np.sort(values)
        self.n = int(values.size)
        self._f_at_sorted = None

    def __call__(self, x):
        counts = np.searchsorted(self.sorted_values, x, side="right")
        return counts / self.n

    def f_at_sorted(self):
        """F evaluated at each sorted sample point (tie-aware)."""
        if self._f_at_sorted is None:
            v = self.sorted_values
            self._f_at_sorted = np.searchsorted(v, v, side="right") / self.n
        return self._f_at_sorted


def ecdf_quantile(F: Ecdf, q: float) -> float:
    """Return inf{s in sample: F(s) > q}; q = 1 returns the maximum.

    At q = 1 the defining set is empty (F never exceeds 1), so the
    convention pins the value to the largest observation.
    """
    q = float(q)
    if not (0.0 <= q <= 1.0):
        raise DomainError(f"quantile level must lie in [0, 1], got {q!r}")
    if q >= 1.0:
        return float(F.sorted_values[-1])
    # same comparison a linear scan would make, so ties and float
    # rounding in count/n cannot shift the answer
    idx = int(np.argmax(F.f_at_sorted() > q))
    return float(F.sorted_values[idx])


@dataclass(frozen=True, eq=False)
class RocCurve:
    """Sensitivity as a function of the false-positive level p."""

    p_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p_grid", np.asarray(self.p_grid, dtype=np.float64))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))
        if self.p_grid.shape != self.values.shape or self.p_grid.ndim != 1:
            raise DomainError("p_grid and values must be matching 1-d arrays")


def roc_curve(neg_scores, pos_scores, p_grid=None) -> RocCurve:
    """Empirical ROC curve evaluated on a grid of false-positive levels.

    The value at p = 1 is pinned to exactly 1 (the accept-everything
    operating point); the plug-in formula alone would report the
    sensitivity just below the smallest negative score.
    """
    if p_grid is None:
        p_grid = DEFAULT_P_GRID
    p = np.asarray(p_grid, dtype=np.float64).ravel()
    if p.size == 0:
        raise DomainError("p_grid must be nonempty")
    if np.any(p < 0.0) or np.any(p > 1.0):
        raise DomainError("p_grid values must lie in [0, 1]")
    F_neg = Ecdf(neg_scores)
    F_pos = Ecdf(pos_scores)
    thresholds = np.array([ecdf_quantile(F_neg, 1.0 - pi) for pi in p])
    values = 1.0 - F_pos(thresholds)
    values[p >= 1.0] = 1.0
    return RocCurve(p, values)


def _as_score_arrays(neg_scores, pos_scores):
    neg = np.ascontiguousarray(np.asarray(neg_scores, dtype=np.float64).ravel())
    pos = np.ascontiguousarray(np.asarray(pos_scores, dtype=np.float64).ravel())
    if neg.size == 0 or pos.size == 0:
        raise InsufficientDataError("both score samples must be nonempty")
    if not (np.all(np.isfinite(neg)) and np.all(np.isfinite(pos))):
        raise DomainError("scores must be finite")
    return neg, pos


def auc(neg_scores, pos_scores) -> float:
    """Fraction of (negative, positive) pairs with pos > neg, ties 1/2.

    Equals the exact area under the empirical ROC step curve.
    """
    neg, pos = _as_score_arrays(neg_scores, pos_scores)
    return _backend.count_below(neg, pos) / (neg.size * pos.size)


def auc_variance(neg_scores, pos_scores) -> float:
    """Plug-in variance of the sqrt(nc1)-scaled AUC.

    sigma^2 = ||F_pos||_{F_neg} + (nc1/nc0) * ||F_neg||_{F_pos}, where
    ||F||_G = mean(F^2) - mean(F)^2 over the other sample's points.
    """
    neg, pos = _as_score_arrays(neg_scores, pos_scores)
    F_neg = Ecdf(neg)
    F_pos = Ecdf(pos)
    fp_at_neg = F_pos(neg)
    fn_at_pos = F_neg(pos)
    norm_pos = float(np.mean(fp_at_neg**2) - np.mean(fp_at_neg) ** 2)
    norm_neg = float(np.mean(fn_at_pos**2) - np.mean(fn_at_pos) ** 2)
    lam_sq = pos.size / neg.size
    var = norm_pos + lam_sq * norm_neg
    return max(var, 0.0)


@dataclass(frozen=True)
class AucEstimate:
    auc: float
    variance: float
    ci_low: float
    ci_high: float
    level: float
    nc0: int
    nc1: int

    @property
    def length(self) -> float:
        return self.ci_high - self.ci_low


def auc_ci(neg_scores, pos_scores, level: float = 0.95) -> AucEstimate:
    """AUC with a normal-limit confidence interval, clipped to [0, 1]."""
    level = float(level)
    if not (0.0 < level < 1.0):
        raise DomainError(f"confidence level must lie in (0, 1), got {level!r}")
    neg, pos = _as_score_arrays(neg_scores, pos_scores)
    a = auc(neg, pos)
    var = auc_variance(neg, pos)
    z = float(ndtri((1.0 + level) / 2.0))
    half = z * np.sqrt(var) / np.sqrt(pos.size)
    return AucEstimate(
        auc=a,
        variance=var,
        ci_low=max(a - half, 0.0),
        ci_high=min(a + half, 1.0),
        level=level,
        nc0=int(neg.size),
        nc1=int(pos.size),
    )
