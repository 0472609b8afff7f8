#!/usr/bin/env python3
"""Run every experiment at default scales and write CSV/JSON into a directory.

Usage:
    python scripts/run_report.py --out results [--cache-dir PATH] [--threads K]
"""

import argparse
import sys

from bgrank.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results")
    ap.add_argument("--cache-dir", default=None)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    argv = ["--threads", str(args.threads)]
    if args.cache_dir:
        argv += ["--cache-dir", args.cache_dir]
    argv += ["report", "--out", args.out]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
