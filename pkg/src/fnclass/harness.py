"""Training/testing protocol: splits, per-split evaluation, repetition.

A sample is split into a training part (the system, default 1/3) and a
testing part; only test scores enter the ROC/AUC inference, since the
leave-one-out scores of the system itself are not independent. The
repeated-split summary averages ROC curves vertically on a shared
p-grid and averages CI bounds across replicates. All randomness flows
through per-replicate substreams of a master seed, so results are
identical under any worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import LabeledSample
from .errors import ClassDepletionError, DomainError, InsufficientDataError
from .pbc import SampleSystem, score_many
from .roc import DEFAULT_P_GRID, AucEstimate, RocCurve, auc_ci, roc_curve
from .transforms import TransformSpec

# substream namespaces; any fixed distinct integers work
_NS_SPLIT = 1
_NS_GEN = 2
_NS_SAMPLE_REF = 3
_NS_REAL_REF = 4
_NS_CONSIST_REF = 5
_NS_CONSIST_REP = 6

_MAX_SPLIT_ATTEMPTS = 1000


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator derived from a master seed and an index key.

    Counter-based (Philox) with the key folded into the seed sequence,
    so any subset of substreams can be drawn in any order, on any
    thread, with identical results.
    """
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def parallel_map(fn, count: int, threads: int = 1) -> list:
    """fn(i) for i in range(count), optionally on a thread pool.

    Results come back ordered by index regardless of completion order;
    callers reduce them sequentially so float aggregation is stable.
    """
    if threads is None or threads <= 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=min(threads, count)) as pool:
        return list(pool.map(fn, range(count)))


@dataclass(frozen=True)
class SplitConfig:
    train_fraction: float = 1.0 / 3.0
    transform: TransformSpec = field(default_factory=TransformSpec)
    level: float = 0.95
    seed: int = 0

    def __post_init__(self):
        f = float(self.train_fraction)
        if not (0.0 < f < 1.0):
            raise DomainError(f"train_fraction must lie in (0, 1), got {f!r}")
        if not (0.0 < float(self.level) < 1.0):
            raise DomainError(f"level must lie in (0, 1), got {self.level!r}")


@dataclass(frozen=True, eq=False)
class SplitResult:
    roc: RocCurve
    auc: AucEstimate
    train_counts: tuple[int, int]
    test_counts: tuple[int, int]
    seed: int | None
    system: SampleSystem


@dataclass(frozen=True, eq=False)
class RepeatedSummary:
    aucs: np.ndarray
    mean_roc: RocCurve
    mean_auc: float
    min_auc: float
    max_auc: float
    ci_low_mean: float
    ci_high_mean: float
    reps: int
    redraws: int


def split_sample(sample: LabeledSample, config: SplitConfig,
                 rng: np.random.Generator) -> tuple[LabeledSample, LabeledSample]:
    """Unstratified random split into (train, test).

    Training size is round(train_fraction * n). The training cohort
    needs two of each class (leave-one-out thresholds and transform
    fitting), the testing cohort one of each; a draw violating that
    raises ClassDepletionError naming the cohort and class.
    """
    n = len(sample)
    if sample.n0 < 2 or sample.n1 < 2:
        raise InsufficientDataError(
            f"splitting needs at least two trajectories per class, "
            f"got n0={sample.n0}, n1={sample.n1}"
        )
    k = int(round(config.train_fraction * n))
    k = min(max(k, 1), n - 1)
    train_idx = np.sort(rng.choice(n, size=k, replace=False))
    mask = np.zeros(n, dtype=bool)
    mask[train_idx] = True
    test_idx = np.flatnonzero(~mask)
    train = sample.subset(train_idx)
    test = sample.subset(test_idx)
    for cohort, part, needed in (("training", train, 2), ("testing", test, 1)):
        for label, count in ((0, part.n0), (1, part.n1)):
            if count < needed:
                raise ClassDepletionError(cohort, label, needed, count)
    return train, test


def evaluate_split(sample: LabeledSample, config: SplitConfig,
                   rng: np.random.Generator | None = None,
                   seed: int | None = None) -> SplitResult:
    """One split: build the system from train, score test, infer ROC/AUC."""
    used_seed = seed
    if rng is None:
        used_seed = config.seed if seed is None else seed
        rng = substream(used_seed, _NS_SPLIT)
    train, test = split_sample(sample, config, rng)
    system = SampleSystem(sample=train, transform=config.transform)
    scores = score_many(system, test.values)
    neg = scores[test.labels == 0]
    pos = scores[test.labels == 1]
    return SplitResult(
        roc=roc_curve(neg, pos),
        auc=auc_ci(neg, pos, config.level),
        train_counts=(train.n0, train.n1),
        test_counts=(test.n0, test.n1),
        seed=used_seed,
        system=system,
    )


def _evaluate_with_redraws(sample: LabeledSample, config: SplitConfig,
                           seed: int, *key: int) -> tuple[SplitResult, int]:
    """Retry class-depleted splits with fresh (key, attempt) substreams."""
    for attempt in range(_MAX_SPLIT_ATTEMPTS):
        rng = substream(seed, _NS_SPLIT, *key, attempt)
        try:
            return evaluate_split(sample, config, rng, seed=seed), attempt
        except ClassDepletionError:
            continue
    raise ClassDepletionError("training", 1, 2, 0)


def repeated_results(sample: LabeledSample, config: SplitConfig,
                     reps: int, threads: int = 1) -> list[tuple[SplitResult, int]]:
    """One SplitResult per replicate, with its redraw count, in rep order."""
    if reps < 1:
        raise DomainError(f"reps must be at least 1, got {reps!r}")

    def one(rep: int) -> tuple[SplitResult, int]:
        return _evaluate_with_redraws(sample, config, config.seed, rep)

    return parallel_map(one, reps, threads)


def summarize(results: list[tuple[SplitResult, int]]) -> RepeatedSummary:
    """Aggregate replicate results: AUC stats, vertical-mean ROC, mean CI bounds."""
    aucs = np.array([r.auc.auc for r, _ in results])
    lows = np.array([r.auc.ci_low for r, _ in results])
    highs = np.array([r.auc.ci_high for r, _ in results])
    roc_mean = np.mean(np.vstack([r.roc.values for r, _ in results]), axis=0)
    redraws = int(sum(a for _, a in results))
    return RepeatedSummary(
        aucs=aucs,
        mean_roc=RocCurve(DEFAULT_P_GRID.copy(), roc_mean),
        mean_auc=float(np.mean(aucs)),
        min_auc=float(np.min(aucs)),
        max_auc=float(np.max(aucs)),
        ci_low_mean=float(np.mean(lows)),
        ci_high_mean=float(np.mean(highs)),
        reps=len(results),
        redraws=redraws,
    )


def repeated_evaluation(sample: LabeledSample, config: SplitConfig,
                        reps: int, threads: int = 1) -> RepeatedSummary:
    """Independent random splits, aggregated.

    The mean ROC is the vertical average over the shared p-grid; the CI
    bounds are averaged across replicates (means of lower bounds and of
    upper bounds). Class-depleted splits are redrawn with derived seeds
    and counted in `redraws`.
    """
    return summarize(repeated_results(sample, config, reps, threads))


def consistency_check(model, sizes, reps: int, seed: int = 0,
                      transform: TransformSpec | None = None,
                      ref_sizes: tuple[int, int] = (2000, 2000),
                      threads: int = 1) -> list[dict]:
    """Sup-norm distance of in-sample ROC curves to a large-sample reference.

    The reference is the ROC of leave-one-out scores on one large
    sample (default (2000, 2000), fixed substream of `seed`), reused
    across sizes; each replicate contributes the sup distance of its
    own in-sample ROC on the shared p-grid. Mean distances should
    shrink as sizes grow.
    """
    from . import simlab
    from .pbc import loo_scores

    if isinstance(model, str):
        model = simlab.parse_model(model)
    if transform is None:
        transform = TransformSpec()

    def in_sample_roc(s: LabeledSample) -> np.ndarray:
        scoreset = loo_scores(s, transform)
        return roc_curve(scoreset.negatives, scoreset.positives).values

    ref_sample = simlab.gen_sample(
        model, ref_sizes[0], ref_sizes[1], substream(seed, _NS_CONSIST_REF)
    )
    ref_values = in_sample_roc(ref_sample)

    rows = []
    for si, (n0, n1) in enumerate(sizes):
        def one(rep: int, si=si, n0=n0, n1=n1) -> float:
            s = simlab.gen_sample(model, n0, n1, substream(seed, _NS_CONSIST_REP, si, rep))
            return float(np.max(np.abs(in_sample_roc(s) - ref_values)))

        sups = parallel_map(one, reps, threads)
        rows.append(
            {"n0": n0, "n1": n1, "reps": reps,
             "mean_sup_distance": float(np.mean(sups))}
        )
    return rows
