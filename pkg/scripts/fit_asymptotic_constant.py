#!/usr/bin/env python3
"""Fit the leading constant of the rank-zero count from exact tables.

Computes R(n) = count(n) * n^(5/4) * exp(-pi sqrt(2n/3)) on a doubling grid
and reports which of the two closed-form candidates it converges to:
6^(-3/4) ~ 0.260847 (direct two-arc evaluation) or sqrt(2)*6^(-3/4) ~ 0.368894.

Usage:
    python scripts/fit_asymptotic_constant.py [--n-max 8000]
"""

import argparse
import math

from bgrank.series import pbar_eta

DIRECT = 6.0**-0.75
PRINTED = math.sqrt(2.0) * 6.0**-0.75


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=8000)
    args = ap.parse_args()
    grid = []
    n = 1000
    while n <= args.n_max:
        grid.append(n)
        n *= 2
    print(f"{'n':>8} {'R(n)':>12} {'vs 6^-3/4':>12} {'vs sqrt2*6^-3/4':>16}")
    last = None
    for n in grid:
        count = pbar_eta(0, n)
        r = math.exp(math.log(count) + 1.25 * math.log(n) - math.pi * math.sqrt(2 * n / 3))
        print(f"{n:>8} {r:>12.8f} {r - DIRECT:>+12.2e} {r - PRINTED:>+16.2e}")
        last = r
    winner = "6^(-3/4)" if abs(last - DIRECT) < abs(last - PRINTED) else "sqrt(2)*6^(-3/4)"
    print(f"\nconverging toward {winner}")


if __name__ == "__main__":
    main()
