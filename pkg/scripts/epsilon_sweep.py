#!/usr/bin/env python3
"""Sweep the root asymmetry of the cubic and record every sector eigenvalue.

The cubic's roots move along (2, -1+eps, -1-eps): at eps = 0 two roots
coincide and the spectrum shows systematic coincidences between gauge
sectors; increasing eps splits them.  Output is CSV with columns
sweep_value, mask, eig_index, re, im.

Example:
    python scripts/epsilon_sweep.py --a 5 --out epsilon_a5.csv
"""

import argparse

from elliptic_qes.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--a", default="0", help="interaction coupling (exact rational)")
    parser.add_argument("--b", default="0", help="external coupling (exact rational)")
    parser.add_argument("--n", default="2", help="number of variables")
    parser.add_argument("--m", default="2", help="degree parameter")
    parser.add_argument("--range", default="0:1:21", help="eps grid as lo:hi:steps")
    parser.add_argument("--out", default=None, help="CSV output path (default stdout)")
    args = parser.parse_args()

    argv = [
        "sweep",
        "--sweep-var",
        "epsilon",
        "--range",
        args.range,
        "--n",
        args.n,
        "--m",
        args.m,
        "--a",
        args.a,
        "--b",
        args.b,
        "--format",
        "csv",
    ]
    if args.out is not None:
        argv += ["--out", args.out]
    return cli_main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
