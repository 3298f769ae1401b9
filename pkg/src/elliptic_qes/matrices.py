"""Exact matrices of gauged operators on the tau-monomial basis.

Columns are images: entry (i, j) is the coefficient of basis monomial i in
the image of basis monomial j.  Assembling a matrix is itself the closure
proof for its parameter point: any image component outside the basis raises
OperatorNotClosed, so a constructed OperatorMatrix certifies that the sector's
invariant space really is invariant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import OperatorNotClosed
from .operator import GaugedOperator, raising_coefficient
from .polynomials import Poly, format_rational, parse_rational
from .symmetric import BasisIndex, enumerate_basis


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense exact-rational matrix over an ordered tau-monomial basis."""

    basis: BasisIndex
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        d = len(self.basis)
        if len(self.rows) != d or any(len(r) != d for r in self.rows):
            raise ValueError("matrix shape does not match basis size")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.dim)), Fraction(0))

    def determinant(self) -> Fraction:
        """Exact determinant by fraction Gaussian elimination."""
        return _determinant([list(row) for row in self.rows])

    def char_poly_eval(self, t: int | Fraction) -> Fraction:
        """Exact value of det(M - t*I); equal values at dim+1 points pin the
        characteristic polynomial, which is how similarity is tested exactly."""
        tf = Fraction(t)
        work = [list(row) for row in self.rows]
        for i in range(self.dim):
            work[i][i] -= tf
        return _determinant(work)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.basis.monomials == other.basis.monomials and self.rows == other.rows


def _determinant(work: list[list[Fraction]]) -> Fraction:
    n = len(work)
    sign = 1
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            sign = -sign
        pval = work[col][col]
        det *= pval
        for r in range(col + 1, n):
            factor = work[r][col] / pval
            if factor:
                row = work[r]
                prow = work[col]
                for c in range(col, n):
                    row[c] -= factor * prow[c]
    return sign * det


def build_matrix(op: GaugedOperator) -> OperatorMatrix:
    """Matrix of the operator on the basis of its invariant space.

    Applies the operator to every basis monomial and reads the image off in
    the same basis.  Raises OperatorNotClosed if any image has a component of
    tau-degree above the sector cutoff.
    """
    basis = enumerate_basis(op.nvars, op.cutoff)
    dim = len(basis)
    columns: list[dict[int, Fraction]] = []
    for j, exps in enumerate(basis):
        image = op.apply(Poly.monomial(exps))
        col: dict[int, Fraction] = {}
        for iexps, coeff in image.terms.items():
            if iexps not in basis:
                raise OperatorNotClosed(
                    f"image of tau-monomial {exps} contains {iexps} of degree "
                    f"{sum(iexps)}, above the cutoff {op.cutoff}"
                )
            col[basis.index_of(iexps)] = coeff
        columns.append(col)
    rows = tuple(
        tuple(columns[j].get(i, Fraction(0)) for j in range(dim)) for i in range(dim)
    )
    return OperatorMatrix(basis, rows)


def raising_coefficient_check(
    op: GaugedOperator,
    degree: int,
    matrix: OperatorMatrix | None = None,
) -> bool:
    """Verify the closed-form degree-raising coefficient at one tau-degree.

    For every basis monomial t of the given degree, the degree-(degree+1)
    component of its image must equal coeff * tau_1 * t exactly, with coeff
    from `raising_coefficient`.  Passing a prebuilt matrix reads the
    components from its columns instead of reapplying the operator; the two
    paths check the same equality.
    """
    if not 0 <= degree <= op.cutoff:
        raise ValueError(f"degree must lie in [0, {op.cutoff}], got {degree}")
    expected = raising_coefficient(op.params, op.mask, degree)
    basis = matrix.basis if matrix is not None else enumerate_basis(op.nvars, op.cutoff)

    for j, exps in enumerate(basis):
        if sum(exps) != degree:
            continue
        raised = (exps[0] + 1,) + exps[1:]
        if matrix is not None:
            for i, iexps in enumerate(basis):
                if sum(iexps) != degree + 1:
                    continue
                want = expected if iexps == raised else Fraction(0)
                if matrix.entry(i, j) != want:
                    return False
            if degree == op.cutoff and expected != 0:
                return False
        else:
            image = op.apply(Poly.monomial(exps))
            component = image.homogeneous_component(degree + 1)
            if component != Poly(op.nvars, {raised: expected}):
                return False
    return True


def export_matrix(mat: OperatorMatrix, fmt: str = "json") -> str:
    """Serialize a matrix: exact JSON (round-trips bit-for-bit) or float CSV."""
    if fmt == "json":
        payload = {
            "dim": mat.dim,
            "basis": [list(exps) for exps in mat.basis],
            "entries": [[format_rational(x) for x in row] for row in mat.rows],
        }
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        return "\n".join(",".join(repr(float(x)) for x in row) for row in mat.rows)
    raise ValueError(f"unknown format {fmt!r}; expected 'json' or 'csv'")


def matrix_from_json(text: str) -> OperatorMatrix:
    """Parse the JSON produced by `export_matrix` back into an exact matrix."""
    payload = json.loads(text)
    monomials = tuple(tuple(int(e) for e in exps) for exps in payload["basis"])
    if not monomials:
        raise ValueError("matrix JSON has an empty basis")
    nvars = len(monomials[0])
    cutoff = max(sum(exps) for exps in monomials)
    basis = enumerate_basis(nvars, cutoff)
    if basis.monomials != monomials:
        raise ValueError("basis in JSON is not a canonical full basis listing")
    rows = tuple(
        tuple(parse_rational(x) for x in row) for row in payload["entries"]
    )
    return OperatorMatrix(basis, rows)
