#!/usr/bin/env python3
"""Sweep the interaction coupling at fixed cubic roots and record all spectra.

Default roots (2, -3/2, -1/2) keep all three roots distinct, so each valid
gauge sector contributes its own eigenvalue branches as the coupling grows.
Output is CSV with columns sweep_value, mask, eig_index, re, im.

Example:
    python scripts/coupling_sweep.py --out coupling.csv
"""

import argparse

from elliptic_qes.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--roots", default="2,-3/2,-1/2", help="cubic roots e1,e2,e3")
    parser.add_argument("--b", default="0", help="external coupling (exact rational)")
    parser.add_argument("--n", default="2", help="number of variables")
    parser.add_argument("--m", default="2", help="degree parameter")
    parser.add_argument("--range", default="0:5:21", help="coupling grid as lo:hi:steps")
    parser.add_argument("--out", default=None, help="CSV output path (default stdout)")
    args = parser.parse_args()

    argv = [
        "sweep",
        "--sweep-var",
        "a",
        "--range",
        args.range,
        "--n",
        args.n,
        "--m",
        args.m,
        "--b",
        args.b,
        "--roots",
        args.roots,
        "--format",
        "csv",
    ]
    if args.out is not None:
        argv += ["--out", args.out]
    return cli_main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
