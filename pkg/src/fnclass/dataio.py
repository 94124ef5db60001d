"""CSV ingestion and emission for trajectory data.

The canonical input is long format with header ``id,label,t,value``,
one observation per row, rows of an id in increasing t order. Wide
format (one row per id, one column per grid point) is accepted as an
alternative. All floats are written back with shortest round-trip
decimals, so ingest(emit(sample)) reproduces the sample bit for bit.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .core import Grid, LabeledSample
from .errors import InsufficientDataError, ParseError


@dataclass(frozen=True, eq=False)
class IngestResult:
    sample: LabeledSample
    ids: list
    diagnostics: list  # one dict per id: points, t range


def _parse_float(text: str, what: str, path, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(
            f"{path}:{line}: {what} {text!r} is not a number"
        ) from None


def _parse_label(text: str, path, line: int) -> int:
    if text not in ("0", "1"):
        raise ParseError(f"{path}:{line}: label must be 0 or 1, got {text!r}")
    return int(text)


def _read_long(path, require_label: bool):
    order: list = []
    per_id: dict = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        cols = {}
        for name in ("id", "label", "t", "value"):
            if name in header:
                cols[name] = header.index(name)
            elif name == "label" and not require_label:
                continue
            else:
                raise ParseError(f"{path}: missing column {name!r} in header")
        has_label = "label" in cols
        for row in reader:
            line = reader.line_num
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"{path}:{line}: expected {len(header)} fields, got {len(row)}"
                )
            fid = row[cols["id"]].strip()
            if not fid:
                raise ParseError(f"{path}:{line}: empty id")
            label = _parse_label(row[cols["label"]].strip(), path, line) if has_label else 0
            t = _parse_float(row[cols["t"]].strip(), "t", path, line)
            value = _parse_float(row[cols["value"]].strip(), "value", path, line)
            if fid not in per_id:
                per_id[fid] = {"label": label, "t": [], "v": [], "line": line}
                order.append(fid)
            rec = per_id[fid]
            if rec["label"] != label:
                raise ParseError(
                    f"{path}:{line}: id {fid!r} has inconsistent labels "
                    f"({rec['label']} and {label})"
                )
            if rec["t"] and not (t > rec["t"][-1]):
                raise ParseError(
                    f"{path}:{line}: id {fid!r} has non-increasing t "
                    f"({rec['t'][-1]!r} then {t!r})"
                )
            rec["t"].append(t)
            rec["v"].append(value)
    return order, per_id


def _read_wide(path, require_label: bool):
    order: list = []
    per_id: dict = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        if not header or header[0] != "id":
            raise ParseError(f"{path}: wide format must start with an 'id' column")
        has_label = len(header) > 1 and header[1] == "label"
        if require_label and not has_label:
            raise ParseError(f"{path}: missing column 'label' in header")
        first_t = 2 if has_label else 1
        t_points = []
        for name in header[first_t:]:
            # accept bare numbers or names like t_0.5 / t0.5
            cleaned = name.lstrip("t").lstrip("_")
            t_points.append(_parse_float(cleaned, f"column name {name!r}", path, 1))
        if len(t_points) < 2:
            raise ParseError(f"{path}: wide format needs at least 2 value columns")
        for row in reader:
            line = reader.line_num
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"{path}:{line}: expected {len(header)} fields, got {len(row)}"
                )
            fid = row[0].strip()
            if not fid:
                raise ParseError(f"{path}:{line}: empty id")
            if fid in per_id:
                raise ParseError(f"{path}:{line}: duplicate id {fid!r}")
            label = _parse_label(row[1].strip(), path, line) if has_label else 0
            values = [
                _parse_float(cell.strip(), "value", path, line)
                for cell in row[first_t:]
            ]
            per_id[fid] = {"label": label, "t": list(t_points), "v": values, "line": line}
            order.append(fid)
    return order, per_id


def ingest_csv(path, wide: bool = False, resample_to: int | None = None,
               require_label: bool = True,
               require_both: bool | None = None) -> IngestResult:
    """Read a trajectory CSV into a LabeledSample.

    Without `resample_to`, every id must be observed on the identical
    grid. With it, each id is linearly interpolated onto an equispaced
    grid of that many points spanning the intersection of the observed
    ranges. With `require_label` off a missing label column is allowed
    (new, unlabeled curves) and labels default to 0. `require_both`
    controls the both-classes-present check and defaults to
    `require_label` (feeding a system with one class is legitimate).
    """
    if require_both is None:
        require_both = require_label
    reader = _read_wide if wide else _read_long
    order, per_id = reader(path, require_label)
    if not order:
        raise ParseError(f"{path}: no data rows")
    for fid in order:
        if len(per_id[fid]["t"]) < 2:
            raise ParseError(
                f"{path}: id {fid!r} has only {len(per_id[fid]['t'])} observation(s)"
            )

    if resample_to is not None:
        if resample_to < 2:
            raise ParseError(f"resample_to must be at least 2, got {resample_to!r}")
        lo = max(per_id[fid]["t"][0] for fid in order)
        hi = min(per_id[fid]["t"][-1] for fid in order)
        if not (lo < hi):
            raise ParseError(
                f"{path}: observed t ranges have empty intersection [{lo}, {hi}]"
            )
        grid = Grid(np.linspace(lo, hi, resample_to))
        rows = [
            np.interp(grid.points, np.asarray(per_id[fid]["t"]), np.asarray(per_id[fid]["v"]))
            for fid in order
        ]
    else:
        t0 = per_id[order[0]]["t"]
        for fid in order[1:]:
            if per_id[fid]["t"] != t0:
                raise ParseError(
                    f"{path}: id {fid!r} is on a different grid than id "
                    f"{order[0]!r}; pass a resample size to unify"
                )
        grid = Grid(np.asarray(t0))
        rows = [np.asarray(per_id[fid]["v"]) for fid in order]

    labels = np.array([per_id[fid]["label"] for fid in order], dtype=np.int8)
    if require_both and (np.all(labels == 0) or np.all(labels == 1)):
        raise InsufficientDataError(
            f"{path}: need both classes, got {int(np.sum(labels == 0))} negative "
            f"and {int(np.sum(labels == 1))} positive ids"
        )
    sample = LabeledSample(grid, np.vstack(rows), labels)
    diagnostics = [
        {"id": fid, "label": per_id[fid]["label"], "points": len(per_id[fid]["t"]),
         "t_min": per_id[fid]["t"][0], "t_max": per_id[fid]["t"][-1]}
        for fid in order
    ]
    return IngestResult(sample=sample, ids=list(order), diagnostics=diagnostics)


def _cell(v) -> str:
    # repr of a Python float is the shortest decimal that round-trips
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_csv(path, header, rows) -> None:
    """CSV with full-precision floats and a fixed line terminator."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def emit_sample_csv(sample: LabeledSample, path, ids=None) -> None:
    """Write a sample in long format; the exact inverse of ingest_csv."""
    if ids is None:
        ids = [f"f{i:04d}" for i in range(len(sample))]
    if len(ids) != len(sample):
        raise ParseError(f"{len(ids)} ids for {len(sample)} trajectories")
    t = sample.grid.points
    rows = []
    for i, fid in enumerate(ids):
        label = int(sample.labels[i])
        for j in range(t.size):
            rows.append((fid, label, t[j], sample.values[i, j]))
    write_csv(path, ("id", "label", "t", "value"), rows)
