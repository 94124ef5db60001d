"""Functional-data classification via pairwise distance comparisons.

A trajectory is scored by the probability that its distance to a random
positive training curve falls below its distance to a random negative
one; ROC/AUC inference on those scores follows a training/testing
protocol with asymptotic confidence intervals.
"""

from ._backend import BACKEND
from .baselines import BaselineResult, baseline_auc, reduce, reduce_values
from .core import (
    DistanceMatrix,
    Grid,
    LabeledSample,
    Trajectory,
    cross_distances,
    default_grid,
    distance_matrix,
    integrate,
    l2_distance,
    resample,
)
from .dataio import IngestResult, emit_sample_csv, ingest_csv
from .errors import (
    ClassDepletionError,
    DimensionError,
    DomainError,
    FnclassError,
    InsufficientDataError,
    ParseError,
    RangeError,
    SpecError,
)
from .harness import (
    RepeatedSummary,
    SplitConfig,
    SplitResult,
    consistency_check,
    evaluate_split,
    repeated_evaluation,
    split_sample,
    substream,
)
from .pbc import (
    SampleSystem,
    ScoreSet,
    classify,
    feed_system,
    load_system,
    loo_scores,
    save_system,
    score_many,
    score_new,
)
from .roc import (
    AucEstimate,
    Ecdf,
    RocCurve,
    auc,
    auc_ci,
    auc_variance,
    ecdf_quantile,
    roc_curve,
)
from .simlab import (
    CoverageReport,
    ModelSpec,
    NoiseSpec,
    coverage_study,
    gen_noise,
    gen_sample,
    gen_trajectory,
    mc_auc_study,
    parse_model,
)
from .transforms import (
    FittedTransform,
    TransformSpec,
    apply_transform,
    fit_transform,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    # errors
    "FnclassError", "DimensionError", "RangeError", "DomainError",
    "InsufficientDataError", "SpecError", "ParseError", "ClassDepletionError",
    # core
    "Grid", "Trajectory", "LabeledSample", "DistanceMatrix", "default_grid",
    "integrate", "l2_distance", "distance_matrix", "cross_distances", "resample",
    # transforms
    "TransformSpec", "FittedTransform", "fit_transform", "apply_transform",
    # pbc
    "SampleSystem", "ScoreSet", "loo_scores", "score_new", "score_many",
    "classify", "save_system", "load_system", "feed_system",
    # roc
    "Ecdf", "RocCurve", "AucEstimate", "ecdf_quantile", "roc_curve", "auc",
    "auc_variance", "auc_ci",
    # harness
    "SplitConfig", "SplitResult", "RepeatedSummary", "split_sample",
    "evaluate_split", "repeated_evaluation", "consistency_check", "substream",
    # simlab
    "ModelSpec", "NoiseSpec", "CoverageReport", "parse_model", "gen_noise",
    "gen_trajectory", "gen_sample", "mc_auc_study", "coverage_study",
    # baselines
    "BaselineResult", "reduce", "reduce_values", "baseline_auc",
    # io
    "IngestResult", "ingest_csv", "emit_sample_csv",
]
