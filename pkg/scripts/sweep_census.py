"""Census sweep over a strength range, written as CSV.

    python3 scripts/sweep_census.py -1 2 13 census.csv --workers 4
"""

import argparse
from fractions import Fraction

from vortex_atlas import census
from vortex_atlas.cli import atomic_write


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("lo", type=Fraction)
    ap.add_argument("hi", type=Fraction)
    ap.add_argument("samples", type=int)
    ap.add_argument("out")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    res = census.sweep(args.lo, args.hi, args.samples, workers=args.workers)
    atomic_write(args.out, census.rows_to_csv(res.rows))
    for lo, hi in res.brackets:
        where = f"at {lo}" if lo == hi else f"in ({float(lo):.12g}, {float(hi):.12g}]"
        print(f"collinear count changes {where}")
    for c in res.critical_values:
        print(f"kite count changes at G4 = {c}")
    off = [r for r in res.rows if r.match is False]
    print(f"{len(res.rows)} rows, {len(off)} differ from the published totals")


if __name__ == "__main__":
    main()
