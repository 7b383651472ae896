#!/usr/bin/env python3
"""Compare two conecs CSV outputs cell by cell.

Typical use: diff a fresh `conecs table 1-1 --format csv` against a stored
baseline, or two builds against each other.

    python3 tools/table_diff.py baseline.csv current.csv --tol 5e-5
"""
import argparse
import csv
import sys


def load(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        sys.exit(f"{path}: empty")
    return rows[0], rows[1:]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("baseline")
    ap.add_argument("current")
    ap.add_argument("--tol", type=float, default=5e-5)
    args = ap.parse_args()

    hdr_a, rows_a = load(args.baseline)
    hdr_b, rows_b = load(args.current)
    if hdr_a != hdr_b:
        sys.exit(f"header mismatch:\n  {hdr_a}\n  {hdr_b}")
    if len(rows_a) != len(rows_b):
        sys.exit(f"row count mismatch: {len(rows_a)} vs {len(rows_b)}")

    worst, bad = 0.0, 0
    for i, (ra, rb) in enumerate(zip(rows_a, rows_b), start=2):
        for col, (va, vb) in enumerate(zip(ra, rb)):
            try:
                d = abs(float(va) - float(vb))
            except ValueError:
                if va != vb:
                    print(f"line {i}, {hdr_a[col]}: {va!r} != {vb!r}")
                    bad += 1
                continue
            worst = max(worst, d)
            if d > args.tol:
                print(f"line {i}, {hdr_a[col]}: {va} vs {vb} (diff {d:.3g})")
                bad += 1

    print(f"{len(rows_a)} rows compared, worst numeric diff {worst:.3g}, tol {args.tol:g}")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
