"""Generative trajectory models and the Monte Carlo experiments on them.

Four families on a common grid (default 101 points on [-1, 1]):

  I    sine curves, negatives sin(pi t), positives 1.4 sin(pi t)
  II   signed parabolas with a per-curve coefficient drawn from the
       two-component mixture N(-2, 0.25^2) / N(2, 0.25^2); negatives
       flip sign at t = 0, positives do not
  III  normal density curves; peak location N(-0.15, 0.1^2) for
       negatives, N(0.15, 0.1^2) for positives, width |N(0.5, 0.2^2)|
  IV   cubic tails -+ (1/2) t^3 / (t-2)^2, separated only near t = 1

Variants fix the additive noise: `a` is the null/no-noise case (for I
and IV both classes share the negative mean curve under Brownian noise;
II and III get no additive noise at all), `b` adds Brownian noise to
both classes, `c` doubles the positive class's variance rate, and `d`
uses the skewed stationary noise for both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

from . import baselines
from .core import Grid, LabeledSample, Trajectory, default_grid
from .errors import DomainError, SpecError
from .harness import (
    SplitConfig,
    _evaluate_with_redraws,
    _NS_GEN,
    _NS_REAL_REF,
    _NS_SAMPLE_REF,
    parallel_map,
    substream,
)
from .pbc import SampleSystem, score_many
from .roc import auc

FAMILIES = ("I", "II", "III", "IV")
VARIANTS = ("a", "b", "c", "d")
NOISE_KINDS = ("none", "brownian", "exp_variogram")

# Noise scales sized against the class gaps of the four families: large
# enough that the noisy variants stay imperfect classifiers, small
# enough that the underlying geometry survives. The confidence-interval
# lengths these produce at (50,50) anchor the regression tests.
BASE_RATE = 1.0 / 6.0
FAST_RATE = 1.0 / 3.0
VARIOGRAM_RATE = 1.0 / 8.0


@dataclass(frozen=True)
class NoiseSpec:
    """Additive noise process for one class of curves.

    rate is the variance rate (Brownian: Var of the increment per unit
    time; stationary kind: the marginal variance). rate 0 degenerates
    to the zero path, which the mean-curve recovery tests rely on.
    """

    kind: str = "none"
    rate: float = 0.0
    corr_length: float = 0.25

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise SpecError(
                f"unknown noise kind {self.kind!r}; expected one of {NOISE_KINDS}"
            )
        rate = float(self.rate)
        if not np.isfinite(rate) or rate < 0.0:
            raise DomainError(f"noise rate must be a nonnegative real, got {self.rate!r}")
        if self.kind == "exp_variogram" and not (float(self.corr_length) > 0.0):
            raise DomainError(
                f"correlation length must be positive, got {self.corr_length!r}"
            )


@dataclass(frozen=True)
class ModelSpec:
    """One of the 16 (family, variant) generative sub-models."""

    family: str
    variant: str
    grid: Grid = field(default_factory=default_grid)

    def __post_init__(self):
        if self.family not in FAMILIES or self.variant not in VARIANTS:
            raise SpecError(
                f"unknown model {self.family!r}-{self.variant!r}; families "
                f"{FAMILIES}, variants {VARIANTS}"
            )

    @property
    def name(self) -> str:
        return f"{self.family}-{self.variant}"

    def noise_for(self, label: int) -> NoiseSpec:
        if self.variant == "a":
            if self.family in ("I", "IV"):
                return NoiseSpec("brownian", BASE_RATE)
            return NoiseSpec("none")
        if self.variant == "b":
            return NoiseSpec("brownian", BASE_RATE)
        if self.variant == "c":
            return NoiseSpec("brownian", FAST_RATE if label == 1 else BASE_RATE)
        return NoiseSpec("exp_variogram", VARIOGRAM_RATE)


def parse_model(text: str, grid: Grid | None = None) -> ModelSpec:
    """Parse names like 'II-b' into a ModelSpec."""
    parts = str(text).strip().split("-")
    if len(parts) != 2:
        raise SpecError(f"model name must look like 'II-b', got {text!r}")
    if grid is None:
        return ModelSpec(parts[0], parts[1])
    return ModelSpec(parts[0], parts[1], grid)


def _mixture_coefficients(rng: np.random.Generator, n: int) -> np.ndarray:
    """Draws from (1/2) N(-2, 0.25^2) + (1/2) N(2, 0.25^2), one per curve."""
    centers = np.where(rng.random(n) < 0.5, -2.0, 2.0)
    return centers + 0.25 * rng.standard_normal(n)


def _mean_rows(model: ModelSpec, label: int, n: int,
               rng: np.random.Generator) -> np.ndarray:
    t = model.grid.points
    fam = model.family
    null = model.variant == "a" and fam in ("I", "IV")
    if fam == "I":
        amp = 1.4 if (label == 1 and not null) else 1.0
        return np.tile(amp * np.sin(np.pi * t), (n, 1))
    if fam == "IV":
        sign = 1.0 if (label == 1 and not null) else -1.0
        return np.tile(sign * 0.5 * t**3 / (t - 2.0) ** 2, (n, 1))
    if fam == "II":
        coef = _mixture_coefficients(rng, n)
        shape = t**2 if label == 1 else t**2 * np.where(t <= 0.0, 1.0, -1.0)
        return coef[:, None] * shape[None, :]
    # III: normal densities with per-curve peak location and width
    mu = rng.normal(-0.15 if label == 0 else 0.15, 0.1, n)
    sigma = np.abs(rng.normal(0.5, 0.2, n))
    z = (t[None, :] - mu[:, None]) / sigma[:, None]
    return np.exp(-0.5 * z * z) / (sigma[:, None] * math.sqrt(2.0 * math.pi))


def gen_noise_batch(spec: NoiseSpec, grid: Grid, rng: np.random.Generator,
                    n: int) -> np.ndarray:
    """n independent noise paths on the grid, one per row."""
    m = len(grid)
    if spec.kind == "none" or spec.rate == 0.0:
        return np.zeros((n, m))
    dt = np.diff(grid.points)
    if spec.kind == "brownian":
        steps = rng.standard_normal((n, m - 1)) * np.sqrt(spec.rate * dt)
        out = np.empty((n, m))
        out[:, 0] = 0.0
        np.cumsum(steps, axis=1, out=out[:, 1:])
        return out
    # stationary skewed noise: an AR(1)-in-t unit Gaussian process pushed
    # through its CDF to uniform, then to centered unit exponentials
    z = np.empty((n, m))
    z[:, 0] = rng.standard_normal(n)
    rho = np.exp(-dt / spec.corr_length)
    innov_sd = np.sqrt(1.0 - rho * rho)
    for j in range(1, m):
        z[:, j] = rho[j - 1] * z[:, j - 1] + innov_sd[j - 1] * rng.standard_normal(n)
    u = ndtr(z)
    np.fmax(u, 5e-324, out=u)  # -log must stay finite
    return np.sqrt(spec.rate) * (-np.log(u) - 1.0)


def gen_noise(spec: NoiseSpec, grid: Grid, rng: np.random.Generator) -> np.ndarray:
    """One noise path on the grid."""
    return gen_noise_batch(spec, grid, rng, 1)[0]


def gen_trajectory(model: ModelSpec, label: int, rng: np.random.Generator,
                   noise: NoiseSpec | None = None) -> Trajectory:
    """One random trajectory; `noise` overrides the variant's process."""
    label = int(label)
    if label not in (0, 1):
        raise DomainError(f"label must be 0 or 1, got {label!r}")
    if noise is None:
        noise = model.noise_for(label)
    values = _mean_rows(model, label, 1, rng)[0]
    values = values + gen_noise(noise, model.grid, rng)
    return Trajectory(model.grid, values)


def gen_sample(model: ModelSpec, n0: int, n1: int,
               rng: np.random.Generator) -> LabeledSample:
    """n0 negative then n1 positive trajectories in one labeled sample."""
    if n0 < 0 or n1 < 0 or n0 + n1 < 1:
        raise DomainError(f"need nonnegative counts with n0+n1 >= 1, got ({n0}, {n1})")
    blocks = []
    for label, count in ((0, n0), (1, n1)):
        if count == 0:
            continue
        rows = _mean_rows(model, label, count, rng)
        rows += gen_noise_batch(model.noise_for(label), model.grid, rng, count)
        blocks.append(rows)
    values = np.vstack(blocks)
    labels = np.concatenate([np.zeros(n0, dtype=np.int8), np.ones(n1, dtype=np.int8)])
    return LabeledSample(model.grid, values, labels)


CRITERIA = ("pbc", "min", "max", "int")


def mc_auc_study(model: ModelSpec, sizes, reps: int, criteria,
                 config: SplitConfig | None = None,
                 threads: int = 1) -> list[dict]:
    """AUC distributions per criterion: one row per (size, criterion, rep).

    PBC runs the split protocol (system from the training third, AUC
    from test scores); the scalar reducers use the whole sample with
    orientation-corrected AUCs. An empty criteria set is a no-op.
    """
    criteria = [c.lower() for c in criteria]
    for c in criteria:
        if c not in CRITERIA:
            raise SpecError(f"unknown criterion {c!r}; expected subset of {CRITERIA}")
    if reps < 1:
        raise DomainError(f"reps must be at least 1, got {reps!r}")
    if config is None:
        config = SplitConfig()
    criteria = [c for c in CRITERIA if c in criteria]
    if not criteria:
        return []

    rows: list[dict] = []
    for si, (n0, n1) in enumerate(sizes):
        scenario = f"{model.name}({n0},{n1})"

        def one(rep: int, si=si, n0=n0, n1=n1) -> list[tuple[str, float]]:
            sample = gen_sample(
                model, n0, n1, substream(config.seed, _NS_GEN, si, rep)
            )
            out = []
            for crit in criteria:
                if crit == "pbc":
                    result, _ = _evaluate_with_redraws(
                        sample, config, config.seed, si, rep
                    )
                    out.append((crit, result.auc.auc))
                else:
                    res = baselines.baseline_auc(sample, crit, config.level)
                    out.append((crit, res.estimate.auc))
            return out

        for rep, per_rep in enumerate(parallel_map(one, reps, threads)):
            for crit, value in per_rep:
                rows.append(
                    {"scenario": scenario, "family": model.family,
                     "variant": model.variant, "n0": n0, "n1": n1,
                     "criterion": crit, "rep": rep, "auc": value}
                )
    return rows


@dataclass(frozen=True)
class CoverageReport:
    """Observed CI coverage for one (model, size) scenario."""

    scenario: str
    coverage_sample: float  # % of CIs containing the replicate's own system AUC
    coverage_real: float    # % containing the fixed large-run reference AUC
    mean_length: float
    n0: int
    n1: int
    reps: int
    auc_real: float
    mean_auc: float

    def __post_init__(self):
        for name in ("coverage_sample", "coverage_real"):
            v = getattr(self, name)
            if not (0.0 <= v <= 100.0):
                raise DomainError(f"{name} must be a percentage, got {v!r}")
        if self.mean_length < 0.0:
            raise DomainError(f"mean_length must be nonnegative, got {self.mean_length!r}")


def coverage_study(model: ModelSpec, sizes, reps: int,
                   config: SplitConfig | None = None, threads: int = 1,
                   real_ref_sizes: tuple[int, int] = (2000, 2000),
                   sample_ref_sizes: tuple[int, int] = (1000, 1000)) -> list[CoverageReport]:
    """CI coverage against two references, per (model, size).

    The real-system reference AUC comes from one large independent run
    (a system and a test sample of `real_ref_sizes` each, scored once,
    fixed substream). The sample-system reference for each replicate is
    the AUC of a fresh `sample_ref_sizes` sample scored against that
    replicate's own system — what the replicate's CI is actually
    estimating.
    """
    if reps < 1:
        raise DomainError(f"reps must be at least 1, got {reps!r}")
    if config is None:
        config = SplitConfig()

    rng = substream(config.seed, _NS_REAL_REF)
    ref_train = gen_sample(model, real_ref_sizes[0], real_ref_sizes[1], rng)
    ref_test = gen_sample(model, real_ref_sizes[0], real_ref_sizes[1], rng)
    ref_system = SampleSystem(sample=ref_train, transform=config.transform)
    ref_scores = score_many(ref_system, ref_test.values)
    auc_real = auc(ref_scores[ref_test.labels == 0], ref_scores[ref_test.labels == 1])

    reports = []
    for si, (n0, n1) in enumerate(sizes):

        def one(rep: int, si=si, n0=n0, n1=n1) -> tuple[float, float, bool, bool]:
            sample = gen_sample(model, n0, n1, substream(config.seed, _NS_GEN, si, rep))
            result, _ = _evaluate_with_redraws(sample, config, config.seed, si, rep)
            fresh = gen_sample(
                model, sample_ref_sizes[0], sample_ref_sizes[1],
                substream(config.seed, _NS_SAMPLE_REF, si, rep),
            )
            scores = score_many(result.system, fresh.values)
            auc_sample = auc(scores[fresh.labels == 0], scores[fresh.labels == 1])
            est = result.auc
            return (
                est.auc,
                est.ci_high - est.ci_low,
                est.ci_low <= auc_sample <= est.ci_high,
                est.ci_low <= auc_real <= est.ci_high,
            )

        results = parallel_map(one, reps, threads)
        aucs = np.array([r[0] for r in results])
        lengths = np.array([r[1] for r in results])
        hits_sample = np.array([r[2] for r in results])
        hits_real = np.array([r[3] for r in results])
        reports.append(
            CoverageReport(
                scenario=f"{model.name}({n0},{n1})",
                coverage_sample=float(100.0 * np.mean(hits_sample)),
                coverage_real=float(100.0 * np.mean(hits_real)),
                mean_length=float(np.mean(lengths)),
                n0=n0,
                n1=n1,
                reps=reps,
                auc_real=float(auc_real),
                mean_auc=float(np.mean(aucs)),
            )
        )
    return reports
