#!/usr/bin/env python3
"""Measure where degree-d Jensen polynomials of the pair counts stabilize.

For each degree d, reports the smallest shift m0 such that J^{d,m} is
hyperbolic (all roots real, exact Sturm certificate) for every m in
[m0, hi], plus the list of failing shifts below it.

Usage:
    python scripts/hyperbolicity_onset.py [--max-degree 5] [--hi 500]
"""

import argparse

from bgrank.series import p2_values
from bgrank.turan import hyperbolicity_onset, is_hyperbolic, jensen_poly


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=5)
    ap.add_argument("--hi", type=int, default=500)
    args = ap.parse_args()
    seq = p2_values(args.hi + args.max_degree + 1)
    for d in range(2, args.max_degree + 1):
        m0 = hyperbolicity_onset(seq, d, args.hi)
        if m0 is None:
            print(f"d={d}: no stable onset up to {args.hi}")
            continue
        failing = [m for m in range(m0) if not is_hyperbolic(jensen_poly(seq, d, m))]
        print(f"d={d}: hyperbolic for every m in [{m0}, {args.hi}]; failures below: {failing}")


if __name__ == "__main__":
    main()
