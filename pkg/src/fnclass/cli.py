"""Command-line surface: simulate, eval, coverage, score, system, roc-plot.

Exit codes: 1 for usage problems (bad flags, bad model/transform
names), 2 for data problems (missing or malformed files, depleted
classes), 3 for numeric problems. Every stochastic command requires an
explicit --seed and is a pure function of its flags and input files:
reruns write byte-identical outputs, whatever --threads says.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import baselines, dataio, simlab, svgplot
from .core import Trajectory, resample
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
from .harness import SplitConfig, repeated_results, summarize
from .pbc import (
    feed_system,
    load_system,
    loo_scores,
    save_system,
    score_many,
    SampleSystem,
)
from .roc import Ecdf, auc, auc_ci, ecdf_quantile, roc_curve
from .transforms import TransformSpec


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; this tool reserves 2 for
    # data problems, so remap to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _type_transform(text: str) -> TransformSpec:
    kind, _, tau = text.partition(":")
    try:
        return TransformSpec(kind, float(tau) if tau else 0.5)
    except (FnclassError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _type_size(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"sizes look like '50,50', got {text!r}")
    try:
        n0, n1 = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes look like '50,50', got {text!r}") from None
    if n0 < 1 or n1 < 1:
        raise argparse.ArgumentTypeError(f"sizes must be positive, got {text!r}")
    return (n0, n1)


def _type_fraction(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not (0.0 < v < 1.0):
        raise argparse.ArgumentTypeError(f"must lie strictly in (0, 1), got {text!r}")
    return v


def _resolve_threads(value) -> int:
    if value is not None:
        return max(int(value), 1)
    env = os.environ.get("FNCLASS_THREADS", "").strip()
    if env:
        try:
            return max(int(env), 1)
        except ValueError:
            raise SpecError(f"FNCLASS_THREADS must be an integer, got {env!r}") from None
    return 1


def _load_config(path) -> dict:
    """JSON object, or plain key=value lines with JSON-decoded values."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ParseError(f"{path}: config must be a JSON object")
        return doc
    doc = {}
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"{path}:{ln}: expected key=value, got {line!r}")
        value = value.strip()
        try:
            doc[key.strip()] = json.loads(value)
        except json.JSONDecodeError:
            doc[key.strip()] = value
    return doc


def _merge_config(args, parser, keys) -> None:
    """Fill unset flags from --config; explicit flags win."""
    if not getattr(args, "config", None):
        return
    doc = _load_config(args.config)
    unknown = set(doc) - set(keys)
    if unknown:
        parser.error(f"unknown config keys: {sorted(unknown)}")
    for key in keys:
        if key not in doc or getattr(args, key, None) is not None:
            continue
        raw = doc[key]
        try:
            if key == "sizes":
                if isinstance(raw, str):
                    raw = [s for s in raw.replace(";", " ").split() if s]
                    value = [_type_size(s) for s in raw]
                else:
                    value = [_type_size(f"{int(a)},{int(b)}") for a, b in raw]
            elif key == "transform":
                value = _type_transform(str(raw))
            elif key == "model":
                value = str(raw)
            elif key == "criteria":
                value = raw if isinstance(raw, str) else ",".join(raw)
            elif key in ("train_frac", "level"):
                value = float(raw)
            else:
                value = int(raw)
        except (argparse.ArgumentTypeError, ValueError, TypeError) as exc:
            parser.error(f"config key {key!r}: {exc}")
        setattr(args, key, value)


def _require(args, parser, names) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            parser.error(f"--{name.replace('_', '-')} is required (flag or config)")


def _split_config(args) -> SplitConfig:
    return SplitConfig(
        train_fraction=args.train_frac if args.train_frac is not None else 1.0 / 3.0,
        transform=args.transform if args.transform is not None else TransformSpec(),
        level=args.level if args.level is not None else 0.95,
        seed=args.seed,
    )


def _out_dir(path) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def _ingest_on_grid(path, wide, system_grid):
    """Ingest unlabeled-or-labeled curves and map them onto a system grid."""
    result = dataio.ingest_csv(path, wide=wide, require_label=False)
    sample = result.sample
    if sample.grid.matches(system_grid):
        return result.ids, sample.values
    rows = [
        resample(Trajectory(sample.grid, row), system_grid).values
        for row in sample.values
    ]
    return result.ids, np.vstack(rows)


# ---------------------------------------------------------------- commands


def cmd_simulate(args, parser) -> int:
    _merge_config(args, parser,
                  ("model", "sizes", "reps", "seed", "criteria", "transform",
                   "train_frac", "level", "threads"))
    _require(args, parser, ("model", "sizes", "reps", "seed"))
    model = simlab.parse_model(args.model)
    config = _split_config(args)
    criteria = [c for c in (args.criteria or "pbc,min,max,int").split(",") if c]
    threads = _resolve_threads(args.threads)
    rows = simlab.mc_auc_study(model, args.sizes, args.reps, criteria,
                               config, threads=threads)
    out = _out_dir(args.out)
    dataio.write_csv(
        os.path.join(out, "aucs.csv"),
        ("scenario", "family", "variant", "n0", "n1", "criterion", "rep", "auc"),
        [(r["scenario"], r["family"], r["variant"], r["n0"], r["n1"],
          r["criterion"], r["rep"], r["auc"]) for r in rows],
    )
    groups = {}
    for r in rows:
        key = r["criterion"] if len(args.sizes) == 1 else \
            f"{r['criterion']} {r['n0']},{r['n1']}"
        groups.setdefault(key, []).append(r["auc"])
    svgplot.strip_plot(
        os.path.join(out, "aucs.svg"),
        sorted(groups.items()),
        title=f"AUC by criterion, model {model.name}",
    )
    return 0


def cmd_eval(args, parser) -> int:
    ingest = dataio.ingest_csv(args.data, wide=args.wide, resample_to=args.resample)
    sample = ingest.sample
    config = _split_config(args)
    threads = _resolve_threads(args.threads)
    results = repeated_results(sample, config, args.reps, threads=threads)
    summary = summarize(results)

    out = _out_dir(args.out)
    per_rep = []
    curves = []
    for rep, (result, _) in enumerate(results):
        per_rep.append(
            (rep, result.auc.auc, result.auc.ci_low, result.auc.ci_high,
             result.train_counts[0], result.train_counts[1],
             result.test_counts[0], result.test_counts[1])
        )
        curves.append(result.roc.values)
    dataio.write_csv(
        os.path.join(out, "reps.csv"),
        ("rep", "auc", "ci_low", "ci_high", "ns0", "ns1", "nc0", "nc1"),
        per_rep,
    )
    dataio.write_csv(
        os.path.join(out, "mean_roc.csv"),
        ("p", "sensitivity"),
        list(zip(summary.mean_roc.p_grid, summary.mean_roc.values)),
    )
    dataio.write_csv(
        os.path.join(out, "summary.csv"),
        ("reps", "mean_auc", "min_auc", "max_auc", "ci_low_mean", "ci_high_mean",
         "redraws"),
        [(summary.reps, summary.mean_auc, summary.min_auc, summary.max_auc,
          summary.ci_low_mean, summary.ci_high_mean, summary.redraws)],
    )
    whole = []
    scores = loo_scores(sample, config.transform)
    est = auc_ci(scores.negatives, scores.positives, config.level)
    whole.append(("pbc", est.auc, est.ci_low, est.ci_high, est.auc, False))
    for kind in baselines.REDUCERS:
        res = baselines.baseline_auc(sample, kind, config.level)
        whole.append(
            (kind, res.estimate.auc, res.estimate.ci_low, res.estimate.ci_high,
             res.raw_auc, res.flipped)
        )
    dataio.write_csv(
        os.path.join(out, "whole_sample.csv"),
        ("criterion", "auc", "ci_low", "ci_high", "raw_auc", "flipped"),
        whole,
    )
    svgplot.roc_plot(
        os.path.join(out, "roc.svg"),
        summary.mean_roc.p_grid, curves, summary.mean_roc.values,
        title=f"{args.reps} split ROC rays with vertical mean",
    )
    return 0


def cmd_coverage(args, parser) -> int:
    _merge_config(args, parser,
                  ("model", "sizes", "reps", "seed", "transform", "train_frac",
                   "level", "threads"))
    _require(args, parser, ("model", "sizes", "reps", "seed"))
    model = simlab.parse_model(args.model)
    config = _split_config(args)
    threads = _resolve_threads(args.threads)
    reports = simlab.coverage_study(model, args.sizes, args.reps, config,
                                    threads=threads)
    out = _out_dir(args.out)
    dataio.write_csv(
        os.path.join(out, "coverage.csv"),
        ("scenario", "coverage_sample", "coverage_real", "mean_length"),
        [(r.scenario, r.coverage_sample, r.coverage_real, r.mean_length)
         for r in reports],
    )
    return 0


def cmd_score(args, parser) -> int:
    system = load_system(args.system)
    ids, values = _ingest_on_grid(args.data, args.wide, system.grid)
    scores = score_many(system, values)
    rows: list = []
    if args.specificity is None:
        header = ("id", "score")
        rows = list(zip(ids, scores))
    else:
        neg = loo_scores(system.sample, system.transform).negatives
        threshold = ecdf_quantile(Ecdf(neg), args.specificity)
        header = ("id", "score", "label_hat")
        rows = [(i, s, int(s > threshold)) for i, s in zip(ids, scores)]
    if args.out:
        dataio.write_csv(args.out, header, rows)
    else:
        writer = dataio._cell
        print(",".join(header))
        for row in rows:
            print(",".join(writer(v) for v in row))
    return 0


def cmd_system_save(args, parser) -> int:
    ingest = dataio.ingest_csv(args.data, wide=args.wide, resample_to=args.resample)
    system = SampleSystem(
        sample=ingest.sample,
        transform=args.transform if args.transform is not None else TransformSpec(),
        meta={"seed": args.seed, "note": args.note or ""},
    )
    save_system(system, args.out)
    return 0


def cmd_system_load(args, parser) -> int:
    system = load_system(args.system)
    sample = system.sample
    print(f"system: {args.system}")
    print(f"trajectories: {len(sample)} ({sample.n0} negative, {sample.n1} positive)")
    print(f"grid: {len(sample.grid)} points on [{sample.grid.a}, {sample.grid.b}]")
    print(f"transform: {system.transform.kind} (tau={system.transform.tau})")
    note = system.meta.get("note", "")
    print(f"meta: seed={system.meta.get('seed')!r} note={note!r}")
    return 0


def cmd_system_feed(args, parser) -> int:
    system = load_system(args.system)
    result = dataio.ingest_csv(args.data, wide=args.wide, require_both=False)
    fed = system
    for i in range(len(result.sample)):
        fed = feed_system(
            fed,
            resample(result.sample.trajectory(i), system.grid),
            int(result.sample.labels[i]),
        )
    save_system(fed, args.out)
    print(f"fed {len(result.sample)} trajectories; system now has {len(fed.sample)}")
    return 0


def cmd_roc_plot(args, parser) -> int:
    labels: list = []
    scores: list = []
    with open(args.scores, "r", encoding="utf-8", newline="") as fh:
        import csv as _csv

        reader = _csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ParseError(f"{args.scores}: empty file") from None
        for name in ("label", "score"):
            if name not in header:
                raise ParseError(f"{args.scores}: missing column {name!r} in header")
        li, si = header.index("label"), header.index("score")
        for row in reader:
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            line = reader.line_num
            if row[li].strip() not in ("0", "1"):
                raise ParseError(f"{args.scores}:{line}: label must be 0 or 1")
            labels.append(int(row[li]))
            try:
                scores.append(float(row[si]))
            except ValueError:
                raise ParseError(
                    f"{args.scores}:{line}: score {row[si]!r} is not a number"
                ) from None
    labels_arr = np.asarray(labels)
    scores_arr = np.asarray(scores)
    neg = scores_arr[labels_arr == 0]
    pos = scores_arr[labels_arr == 1]
    p_grid = np.linspace(0.0, 1.0, args.grid)
    curve = roc_curve(neg, pos, p_grid)
    a = auc(neg, pos)
    base, _ = os.path.splitext(args.out)
    dataio.write_csv(base + ".csv", ("p", "sensitivity"),
                     list(zip(curve.p_grid, curve.values)))
    svgplot.roc_plot(args.out, curve.p_grid, [], curve.values,
                     title=f"ROC (AUC {a:.3f})")
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> _Parser:
    parser = _Parser(prog="fnclass",
                     description="Functional-data classification toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, seed_required=False, config=False):
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: FNCLASS_THREADS or 1); "
                            "never affects outputs")
        if config:
            p.add_argument("--config", default=None,
                           help="JSON or key=value file supplying defaults for "
                                "unset flags")
            p.add_argument("--seed", type=int, default=None,
                           help="master seed (required here or in the config)")
        else:
            p.add_argument("--seed", type=int, required=seed_required,
                           default=None, help="master seed")

    p = sub.add_parser("simulate", help="Monte Carlo AUC study on a generative model")
    p.add_argument("--model", default=None, help="family-variant, e.g. II-b")
    p.add_argument("--sizes", type=_type_size, action="append", default=None,
                   help="class sizes 'n0,n1'; repeat for several")
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--criteria", default=None,
                   help="comma list from pbc,min,max,int (default: all)")
    p.add_argument("--transform", type=_type_transform, default=None,
                   help="identity, subgroup_proximity[:tau], or positive_profile")
    p.add_argument("--train-frac", dest="train_frac", type=_type_fraction, default=None)
    p.add_argument("--level", type=_type_fraction, default=None)
    p.add_argument("--out", required=True)
    add_common(p, config=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("eval", help="repeated split evaluation of a labeled dataset")
    p.add_argument("--data", required=True)
    p.add_argument("--wide", action="store_true")
    p.add_argument("--resample", type=int, default=None,
                   help="resample all ids to this many equispaced points")
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--transform", type=_type_transform, default=None)
    p.add_argument("--train-frac", dest="train_frac", type=_type_fraction, default=None)
    p.add_argument("--level", type=_type_fraction, default=None)
    p.add_argument("--out", required=True)
    add_common(p, seed_required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("coverage", help="CI coverage study on a generative model")
    p.add_argument("--model", default=None)
    p.add_argument("--sizes", type=_type_size, action="append", default=None)
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--transform", type=_type_transform, default=None)
    p.add_argument("--train-frac", dest="train_frac", type=_type_fraction, default=None)
    p.add_argument("--level", type=_type_fraction, default=None)
    p.add_argument("--out", required=True)
    add_common(p, config=True)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("score", help="score new curves against a saved system")
    p.add_argument("--system", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--wide", action="store_true")
    p.add_argument("--specificity", type=_type_fraction, default=None,
                   help="emit 0/1 labels at this training specificity")
    p.add_argument("--out", default=None, help="output CSV (default: stdout)")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("system", help="save, inspect or extend a system file")
    ssub = p.add_subparsers(dest="system_command", required=True)

    ps = ssub.add_parser("save", help="build a .pbcsys.json from labeled CSV")
    ps.add_argument("--data", required=True)
    ps.add_argument("--wide", action="store_true")
    ps.add_argument("--resample", type=int, default=None)
    ps.add_argument("--transform", type=_type_transform, default=None)
    ps.add_argument("--seed", type=int, default=None, help="recorded in metadata")
    ps.add_argument("--note", default=None)
    ps.add_argument("--out", required=True)
    ps.set_defaults(func=cmd_system_save)

    ps = ssub.add_parser("load", help="print a summary of a system file")
    ps.add_argument("--system", required=True)
    ps.set_defaults(func=cmd_system_load)

    ps = ssub.add_parser("feed", help="append labeled trajectories to a system")
    ps.add_argument("--system", required=True)
    ps.add_argument("--data", required=True)
    ps.add_argument("--wide", action="store_true")
    ps.add_argument("--out", required=True)
    ps.set_defaults(func=cmd_system_feed)

    p = sub.add_parser("roc-plot", help="plot a ROC curve from a label,score CSV")
    p.add_argument("--scores", required=True)
    p.add_argument("--out", required=True, help="output SVG; companion CSV beside it")
    p.add_argument("--grid", type=int, default=201)
    p.set_defaults(func=cmd_roc_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, parser)
    except SystemExit as exc:
        # argparse-level exits (usage errors, --help) already printed
        return int(exc.code) if exc.code is not None else 0
    except SpecError as exc:
        print(f"fnclass: error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, OSError, InsufficientDataError, ClassDepletionError,
            DimensionError, RangeError) as exc:
        print(f"fnclass: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, FloatingPointError, ZeroDivisionError) as exc:
        print(f"fnclass: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
