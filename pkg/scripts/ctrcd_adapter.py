#!/usr/bin/env python3
"""Convert the public BC-cardiotox velocity-curve export to fnclass CSV.

The source dataset (figshare: "BC cardiotox, a cardiotoxicity dataset
for breast cancer patients", doi 10.6084/m9.figshare.22650748) ships
spreadsheets with one row per patient: an id column, a CTRCD indicator,
and one column per sampled time point of the Tissue Doppler Imaging
velocity trace. Export the sheet with those columns to CSV (xlsx
readers are deliberately not a dependency here), then:

    python3 scripts/ctrcd_adapter.py --input export.csv \
        --id-col patient --label-col CTRCD --out ctrcd_long.csv

    FNCLASS_CTRCD_CSV=ctrcd_long.csv pytest tests/test_acceptance.py -k ctrcd

Column names holding the curve samples must parse as numbers (optionally
after a prefix, e.g. "t_0.25"; pass --time-prefix t_). Rows whose label
cell is empty are dropped. A long-format source table (one observation
per row) is handled with --long and the column flags below.

The output is the package's long format: id,label,t,value with one row
per observation, suitable for `fnclass eval --data ... --resample 101`
or ingest_csv(..., resample_to=101). Patients measured on different
time supports are fine; resampling happens downstream on the common
overlap.
"""

from __future__ import annotations

import argparse
import csv
import sys

POSITIVE_TOKENS = {"1", "1.0", "yes", "y", "true", "ctrcd", "case", "positive"}
NEGATIVE_TOKENS = {"0", "0.0", "no", "n", "false", "control", "negative", "none"}


def parse_label(raw: str) -> int | None:
    token = raw.strip().lower()
    if not token or token in ("na", "nan"):
        return None
    if token in POSITIVE_TOKENS:
        return 1
    if token in NEGATIVE_TOKENS:
        return 0
    raise SystemExit(f"unrecognized label value {raw!r}; expected one of "
                     f"{sorted(POSITIVE_TOKENS | NEGATIVE_TOKENS)}")


def read_rows(path):
    with open(path, "r", encoding="utf-8-sig", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise SystemExit(f"{path}: empty file")
        rows = [row for row in reader if any(cell.strip() for cell in row)]
    return [h.strip() for h in header], rows


def col_index(header, name, what):
    if name not in header:
        raise SystemExit(f"column {name!r} ({what}) not in header: {header}")
    return header.index(name)


def from_wide(args):
    header, rows = read_rows(args.input)
    id_ix = col_index(header, args.id_col, "patient id")
    label_ix = col_index(header, args.label_col, "class indicator")

    times = []
    for ix, name in enumerate(header):
        if ix in (id_ix, label_ix):
            continue
        text = name
        if args.time_prefix and text.startswith(args.time_prefix):
            text = text[len(args.time_prefix):]
        try:
            times.append((float(text), ix))
        except ValueError:
            continue
    if len(times) < 2:
        raise SystemExit("fewer than two value columns with numeric names; "
                         "check --time-prefix")
    times.sort()

    out, skipped = [], 0
    for row in rows:
        label = parse_label(row[label_ix])
        if label is None:
            skipped += 1
            continue
        fid = row[id_ix].strip()
        for t, ix in times:
            cell = row[ix].strip()
            if not cell or cell.lower() in ("na", "nan"):
                continue
            out.append((fid, label, t, float(cell)))
    return out, skipped


def from_long(args):
    header, rows = read_rows(args.input)
    id_ix = col_index(header, args.id_col, "patient id")
    label_ix = col_index(header, args.label_col, "class indicator")
    t_ix = col_index(header, args.time_col, "time")
    v_ix = col_index(header, args.value_col, "velocity")

    recs, skipped = {}, 0
    for row in rows:
        label = parse_label(row[label_ix])
        if label is None:
            skipped += 1
            continue
        fid = row[id_ix].strip()
        recs.setdefault(fid, (label, []))[1].append(
            (float(row[t_ix]), float(row[v_ix]))
        )
    out = []
    for fid, (label, pts) in recs.items():
        for t, v in sorted(pts):
            out.append((fid, label, t, v))
    return out, skipped


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--input", required=True, help="CSV export of the source sheet")
    ap.add_argument("--out", required=True, help="long CSV for fnclass")
    ap.add_argument("--id-col", default="id")
    ap.add_argument("--label-col", default="CTRCD")
    ap.add_argument("--time-prefix", default="",
                    help="prefix stripped from value-column names (wide input)")
    ap.add_argument("--long", action="store_true",
                    help="input is one observation per row")
    ap.add_argument("--time-col", default="t", help="time column (with --long)")
    ap.add_argument("--value-col", default="value", help="value column (with --long)")
    args = ap.parse_args(argv)

    out, skipped = (from_long if args.long else from_wide)(args)
    ids = {fid for fid, *_ in out}
    n1 = len({fid for fid, label, *_ in out if label == 1})
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("id", "label", "t", "value"))
        for fid, label, t, v in out:
            writer.writerow((fid, label, repr(t), repr(v)))
    print(f"wrote {len(out)} observations for {len(ids)} patients "
          f"({n1} positive) to {args.out}; {skipped} unlabeled rows skipped")
    return 0


if __name__ == "__main__":
    sys.exit(main())
