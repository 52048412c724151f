"""Tabulate the rhombus diagonal ratio against G4 and report which points certify."""

import argparse
import csv
import sys

from vortex_atlas import rhombus


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lo", type=float, default=-10.0)
    ap.add_argument("--hi", type=float, default=10.0)
    ap.add_argument("--samples", type=int, default=201)
    args = ap.parse_args()
    rows = rhombus.sweep_rows(args.lo, args.hi, args.samples)
    w = csv.DictWriter(sys.stdout, fieldnames=rhombus.SWEEP_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    good = [r["gamma4"] for r in rows if r["certified"]]
    print(f"# certified at G4 = {good}", file=sys.stderr)


if __name__ == "__main__":
    main()
