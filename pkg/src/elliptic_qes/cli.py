"""Command-line interface.

Subcommands:

  matrix          exact sector matrix as JSON or float CSV
  spectrum        eigenvalues of one sector or of every valid sector
  sweep           eigenvalues along an exact rational parameter grid
  masks           the eight gauge sectors with their cutoffs and dimensions
  eigenfunctions  gauge prefactor and polynomial factor of each eigenstate
  verify          the built-in verification suite

All rational inputs ("3", "-1/2", "0.25") are parsed exactly; sweeps place
their grid points exactly as lo + k (hi - lo)/(steps - 1).  Exit codes:
0 success, 1 a verification or convergence failure, 2 a parameter error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import (
    InvalidDegree,
    NoConvergence,
    NonCancellingPole,
    NotSymmetric,
    OperatorNotClosed,
)
from .matrices import build_matrix, export_matrix
from .model import ALL_MASKS, GaugeMask, ModelParams, list_valid_masks
from .operator import build_gauged_operator
from .oracles import epsilon_roots
from .polynomials import Exponents, format_rational, parse_rational
from .spectral import eigenvector, spectrum_of, to_float
from .verify import CHECK_NAMES, report_json, run_checks

SWEEP_HEADER = "sweep_value,mask,eig_index,re,im"


def _parse_roots(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 3:
        raise ValueError(f"--roots needs three comma-separated rationals, got {text!r}")
    e1, e2, e3 = (parse_rational(p) for p in parts)
    return (e1, e2, e3)


def _parse_range(text: str) -> tuple[Fraction, Fraction, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"--range must be lo:hi:steps, got {text!r}")
    lo, hi = parse_rational(parts[0]), parse_rational(parts[1])
    steps = int(parts[2])
    if steps < 1:
        raise ValueError(f"--range needs at least one step, got {steps}")
    return lo, hi, steps


def _grid(lo: Fraction, hi: Fraction, steps: int) -> list[Fraction]:
    if steps == 1:
        return [lo]
    return [lo + Fraction(k, steps - 1) * (hi - lo) for k in range(steps)]


def _selected_masks(params: ModelParams, text: str) -> list[GaugeMask]:
    """Resolve a --mask value: 'all' means every valid sector, anything else
    names one mask that must itself be valid."""
    if text.strip().lower() == "all":
        masks = list(list_valid_masks(params))
        if not masks:
            raise InvalidDegree(
                f"no gauge sector of m={format_rational(params.degree_m)}, "
                f"b={format_rational(params.coupling_b)} has an integer cutoff"
            )
        return masks
    return [GaugeMask.from_string(text)]


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _params_from(args: argparse.Namespace) -> ModelParams:
    roots = _parse_roots(args.roots)
    return ModelParams(
        args.n,
        parse_rational(args.a),
        parse_rational(args.b),
        parse_rational(args.m),
        roots,
    )


def _params_payload(params: ModelParams) -> dict:
    return {
        "nvars": params.nvars,
        "a": format_rational(params.coupling_a),
        "b": format_rational(params.coupling_b),
        "m": format_rational(params.degree_m),
        "roots": [format_rational(e) for e in params.roots],
    }


# -- subcommands -----------------------------------------------------------------


def cmd_matrix(args: argparse.Namespace) -> int:
    params = _params_from(args)
    mask = GaugeMask.from_string(args.mask)
    mat = build_matrix(build_gauged_operator(params, mask))
    _emit(export_matrix(mat, args.format), args.out)
    return 0


def _sector_payload(params: ModelParams, mask: GaugeMask) -> dict:
    spectrum = spectrum_of(build_matrix(build_gauged_operator(params, mask)))
    return {
        "mask": str(mask),
        "cutoff": int(params.shifted_degree(mask)),
        "dimension": params.basis_dimension(mask),
        "eigenvalues": [{"re": v.real, "im": v.imag} for v in spectrum.values],
    }


def cmd_spectrum(args: argparse.Namespace) -> int:
    params = _params_from(args)
    sectors = [_sector_payload(params, mask) for mask in _selected_masks(params, args.mask)]
    if args.format == "json":
        payload = {"params": _params_payload(params), "sectors": sectors}
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        lines = ["mask,eig_index,re,im"]
        for sector in sectors:
            for i, v in enumerate(sector["eigenvalues"]):
                lines.append(f"{sector['mask']},{i},{v['re']!r},{v['im']!r}")
        _emit("\n".join(lines), args.out)
    return 0


def sweep_rows(
    sweep_var: str,
    lo: Fraction,
    hi: Fraction,
    steps: int,
    *,
    nvars: int = 2,
    degree_m: Fraction = Fraction(2),
    coupling_a: Fraction = Fraction(0),
    coupling_b: Fraction = Fraction(0),
    roots: tuple[Fraction, Fraction, Fraction] | None = None,
    mask: str = "all",
) -> list[tuple[Fraction, str, int, float, float]]:
    """Spectra along an exact grid, one row per eigenvalue.

    sweep_var 'epsilon' moves the roots along (2, -1+eps, -1-eps) and rejects
    an explicit root tuple; sweep_var 'a' sweeps the interaction coupling
    over fixed roots.  Rows are (value, mask, index, re, im), ordered by grid
    point, then canonical mask order, then eigenvalue order.
    """
    if sweep_var == "epsilon" and roots is not None:
        raise ValueError("an epsilon sweep fixes the root family; drop --roots")
    if sweep_var not in ("epsilon", "a"):
        raise ValueError(f"sweep variable must be 'epsilon' or 'a', got {sweep_var!r}")
    rows: list[tuple[Fraction, str, int, float, float]] = []
    for value in _grid(lo, hi, steps):
        if sweep_var == "epsilon":
            params = ModelParams(nvars, coupling_a, coupling_b, degree_m, epsilon_roots(value))
        else:
            params = ModelParams(
                nvars, value, coupling_b, degree_m, roots or (2, -1, -1)
            )
        for sector_mask in _selected_masks(params, mask):
            spectrum = spectrum_of(build_matrix(build_gauged_operator(params, sector_mask)))
            for i, v in enumerate(spectrum.values):
                rows.append((value, str(sector_mask), i, v.real, v.imag))
    return rows


def cmd_sweep(args: argparse.Namespace) -> int:
    lo, hi, steps = _parse_range(args.range)
    explicit_roots = _parse_roots(args.roots) if args.roots is not None else None
    if args.sweep_var == "a" and args.a is not None:
        raise ValueError("the swept coupling comes from --range; drop --a")
    rows = sweep_rows(
        args.sweep_var,
        lo,
        hi,
        steps,
        nvars=args.n,
        degree_m=parse_rational(args.m),
        coupling_a=parse_rational(args.a) if args.a is not None else Fraction(0),
        coupling_b=parse_rational(args.b),
        roots=explicit_roots,
        mask=args.mask,
    )
    if args.format == "csv":
        lines = [SWEEP_HEADER]
        for value, mask, i, re, im in rows:
            lines.append(f"{float(value)!r},{mask},{i},{re!r},{im!r}")
        _emit("\n".join(lines), args.out)
    else:
        payload = {
            "sweep_var": args.sweep_var,
            "rows": [
                {
                    "value": format_rational(value),
                    "mask": mask,
                    "eig_index": i,
                    "re": re,
                    "im": im,
                }
                for value, mask, i, re, im in rows
            ],
        }
        _emit(json.dumps(payload, indent=2), args.out)
    return 0


def cmd_masks(args: argparse.Namespace) -> int:
    params = _params_from(args)
    records = []
    for mask in ALL_MASKS:
        cutoff = params.shifted_degree(mask)
        valid = params.sector_is_valid(mask)
        records.append(
            {
                "mask": str(mask),
                "cutoff": format_rational(cutoff),
                "dimension": params.basis_dimension(mask) if valid else None,
                "valid": valid,
            }
        )
    if args.format == "json":
        _emit(json.dumps({"params": _params_payload(params), "masks": records}, indent=2), args.out)
    else:
        lines = ["mask  cutoff  dimension  valid"]
        for r in records:
            dim = "-" if r["dimension"] is None else str(r["dimension"])
            lines.append(
                f"{r['mask']:<5} {r['cutoff']:>6}  {dim:>9}  {'yes' if r['valid'] else 'no'}"
            )
        _emit("\n".join(lines), args.out)
    return 0


def _monomial_name(exponents: Exponents) -> str:
    if not any(exponents):
        return "1"
    parts = []
    for i, e in enumerate(exponents):
        if e == 1:
            parts.append(f"t{i + 1}")
        elif e > 1:
            parts.append(f"t{i + 1}^{e}")
    return "*".join(parts)


def _gauge_prefix_text(params: ModelParams, mask: GaugeMask) -> str:
    exponent = params.gauge_exponent()
    if not mask.indices or exponent == 0:
        return "1"
    factors = []
    for i in mask.indices:
        e = params.roots[i - 1]
        if e == 0:
            base = "z_k"
        elif e > 0:
            base = f"(z_k - {format_rational(e)})"
        else:
            base = f"(z_k + {format_rational(-e)})"
        factors.append(f"{base}^({format_rational(exponent)})")
    return "prod_k " + " * ".join(factors)


def cmd_eigenfunctions(args: argparse.Namespace) -> int:
    params = _params_from(args)
    mask = GaugeMask.from_string(args.mask)
    mat = build_matrix(build_gauged_operator(params, mask))
    spectrum = spectrum_of(mat)
    arr = to_float(mat)
    lines = [
        f"sector mask {mask}: cutoff {int(params.shifted_degree(mask))}, "
        f"dimension {mat.dim}",
        f"gauge prefix: {_gauge_prefix_text(params, mask)}",
    ]
    for value in spectrum.values:
        vec = eigenvector(arr, value)
        anchor = max(range(len(vec)), key=lambda i: abs(vec[i]))
        phase = vec[anchor] / abs(vec[anchor])
        vec = vec / phase
        text = ""
        for i, exps in enumerate(mat.basis):
            c = complex(vec[i])
            if abs(c) < 1e-12:
                continue
            if abs(c.imag) < 1e-9:
                sign, c_text = ("-", f"{-c.real:.9g}") if c.real < 0 else ("+", f"{c.real:.9g}")
            else:
                sign, c_text = "+", f"({c.real:.9g}{c.imag:+.9g}j)"
            name = _monomial_name(exps)
            term = c_text if name == "1" else f"{c_text}*{name}"
            if not text:
                text = term if sign == "+" else f"-{term}"
            else:
                text += f" {sign} {term}"
        value_text = (
            f"{value.real:.9g}" if abs(value.imag) < 1e-9 else f"{value.real:.9g}{value.imag:+.9g}j"
        )
        lines.append(f"eigenvalue {value_text}: polynomial factor {text}")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    only = None
    if args.only is not None:
        only = [name.strip() for name in args.only.split(",") if name.strip()]
    force = parse_rational(args.force_exponent) if args.force_exponent is not None else None
    results = run_checks(only=only, force_exponent=force)
    if args.format == "json":
        _emit(json.dumps(report_json(results), indent=2), args.out)
    else:
        lines = [
            f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results
        ]
        ok = all(r.passed for r in results)
        lines.append(f"{len(results)} checks, {'all passed' if ok else 'FAILURES PRESENT'}")
        _emit("\n".join(lines), args.out)
    return 0 if all(r.passed for r in results) else 1


# -- parser ------------------------------------------------------------------------


def _add_param_flags(sub: argparse.ArgumentParser, *, roots_default: str | None) -> None:
    sub.add_argument("--n", type=int, default=2, help="number of variables (default 2)")
    sub.add_argument("--m", default="2", help="degree parameter, exact rational (default 2)")
    sub.add_argument("--b", default="0", help="external coupling b, exact rational (default 0)")
    sub.add_argument(
        "--roots",
        default=roots_default,
        help="three cubic roots e1,e2,e3 summing to zero (default 2,-1,-1)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elliptic-qes",
        description="Exact sector matrices and spectra of a quasi-exactly-solvable "
        "elliptic many-body operator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_matrix = sub.add_parser("matrix", help="print one sector matrix")
    _add_param_flags(p_matrix, roots_default="2,-1,-1")
    p_matrix.add_argument("--a", default="0", help="interaction coupling a (default 0)")
    p_matrix.add_argument("--mask", default="none", help="gauge mask (default none)")
    p_matrix.add_argument("--format", choices=("json", "csv"), default="json")
    p_matrix.add_argument("--out", default=None, help="write to a file instead of stdout")
    p_matrix.set_defaults(func=cmd_matrix)

    p_spec = sub.add_parser("spectrum", help="eigenvalues of one or all sectors")
    _add_param_flags(p_spec, roots_default="2,-1,-1")
    p_spec.add_argument("--a", default="0", help="interaction coupling a (default 0)")
    p_spec.add_argument("--mask", default="all", help="gauge mask or 'all' (default all)")
    p_spec.add_argument("--format", choices=("json", "csv"), default="json")
    p_spec.add_argument("--out", default=None)
    p_spec.set_defaults(func=cmd_spectrum)

    p_sweep = sub.add_parser("sweep", help="spectra along an exact parameter grid")
    _add_param_flags(p_sweep, roots_default=None)
    p_sweep.add_argument("--a", default=None, help="interaction coupling a (epsilon sweeps only)")
    p_sweep.add_argument("--mask", default="all", help="gauge mask or 'all' (default all)")
    p_sweep.add_argument(
        "--sweep-var", choices=("epsilon", "a"), required=True, dest="sweep_var"
    )
    p_sweep.add_argument("--range", required=True, help="grid as lo:hi:steps")
    p_sweep.add_argument("--format", choices=("json", "csv"), default="csv")
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    p_masks = sub.add_parser("masks", help="list the eight gauge sectors")
    _add_param_flags(p_masks, roots_default="2,-1,-1")
    p_masks.add_argument("--a", default="0", help="interaction coupling a (default 0)")
    p_masks.add_argument("--format", choices=("text", "json"), default="text")
    p_masks.add_argument("--out", default=None)
    p_masks.set_defaults(func=cmd_masks)

    p_eig = sub.add_parser(
        "eigenfunctions", help="gauge prefactor and polynomial factor per eigenvalue"
    )
    _add_param_flags(p_eig, roots_default="2,-1,-1")
    p_eig.add_argument("--a", default="0", help="interaction coupling a (default 0)")
    p_eig.add_argument("--mask", default="none", help="gauge mask (default none)")
    p_eig.add_argument("--out", default=None)
    p_eig.set_defaults(func=cmd_eigenfunctions)

    p_verify = sub.add_parser("verify", help="run the verification suite")
    p_verify.add_argument(
        "--only",
        default=None,
        help="comma-separated subset of checks: " + ", ".join(CHECK_NAMES),
    )
    p_verify.add_argument("--force-exponent", default=None, help=argparse.SUPPRESS)
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NoConvergence, OperatorNotClosed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (
        ValueError,
        InvalidDegree,
        NonCancellingPole,
        NotSymmetric,
        ZeroDivisionError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
