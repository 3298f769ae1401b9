"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial in ``nvars`` variables is a sparse map from exponent tuples to
``fractions.Fraction`` coefficients.  Zero coefficients are never stored, so
two equal polynomials always have equal term maps and identity testing is
exact.  Every operation returns a new polynomial; instances are treated as
immutable, which makes them safe to share and cache.

The canonical term order is graded lexicographic with the first variable
dominant: monomials are compared by total degree first, then lexicographically
on the exponent tuple.  The leading term of a product is the product of the
leading terms in this order, which is what makes single-divisor exact division
(`Poly.divide_exact`) a decision procedure: the reduction stalls if and only
if the division is not exact.

No floating point enters this module; all downstream exactness guarantees
rest on it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import NonZeroRemainder

Exponents = tuple[int, ...]

# Exact rational inputs accepted at API boundaries.  Floats are deliberately
# excluded: a float has already lost exactness before we see it.
RationalLike = int | str | Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def format_rational(x: Fraction) -> str:
    """Render a rational as ``"p/q"``, omitting the denominator when it is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, integer, or decimal strings to an exact rational.

    Decimal strings convert exactly (``"0.25"`` becomes 1/4), never through a
    binary float.  Raises ValueError on malformed input.
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def grlex_key(exponents: Exponents) -> tuple[int, Exponents]:
    """Sort key realizing graded lex order; max() under it gives the leading monomial."""
    return (sum(exponents), exponents)


def listing_key(exponents: Exponents) -> tuple[int, Exponents]:
    """Sort key for canonical listings: degree ascending, first-variable-dominant
    monomials first within each degree (so ``[1, x1, x2, x1^2, x1*x2, x2^2]``)."""
    return (sum(exponents), tuple(-e for e in exponents))


class Poly:
    """Sparse exact polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Fraction] | None = None):
        if nvars < 0:
            raise ValueError(f"nvars must be non-negative, got {nvars}")
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != nvars:
                    raise ValueError(
                        f"exponent tuple {exps} has length {len(exps)}, expected {nvars}"
                    )
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = Fraction(coeff)
                if c:
                    clean[tuple(exps)] = c
        self.nvars = nvars
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: int | Fraction) -> Poly:
        c = Fraction(value)
        if not c:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int) -> Poly:
        """The polynomial x_index (0-based index)."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): _ONE})

    @classmethod
    def monomial(cls, exponents: Iterable[int], coeff: int | Fraction = 1) -> Poly:
        exps = tuple(exponents)
        return cls(len(exps), {exps: Fraction(coeff)})

    # -- ring operations ----------------------------------------------------

    def _check_same_space(self, other: Poly) -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other: Poly) -> Poly:
        self._check_same_space(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps, _ZERO) + coeff
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
        result = Poly.__new__(Poly)
        result.nvars = self.nvars
        result.terms = out
        return result

    def __neg__(self) -> Poly:
        result = Poly.__new__(Poly)
        result.nvars = self.nvars
        result.terms = {exps: -coeff for exps, coeff in self.terms.items()}
        return result

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly | int | Fraction) -> Poly:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            result = Poly.__new__(Poly)
            result.nvars = self.nvars
            result.terms = (
                {exps: coeff * c for exps, coeff in self.terms.items()} if c else {}
            )
            return result
        self._check_same_space(other)
        out: dict[Exponents, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                acc = out.get(exps, _ZERO) + ca * cb
                if acc:
                    out[exps] = acc
                else:
                    out.pop(exps, None)
        result = Poly.__new__(Poly)
        result.nvars = self.nvars
        result.terms = out
        return result

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Poly:
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.nvars, 1)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- calculus and evaluation --------------------------------------------

    def diff(self, index: int) -> Poly:
        """Exact partial derivative with respect to variable ``index`` (0-based)."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range for nvars={self.nvars}")
        out: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            lowered = exps[:index] + (e - 1,) + exps[index + 1 :]
            acc = out.get(lowered, _ZERO) + coeff * e
            if acc:
                out[lowered] = acc
            else:
                out.pop(lowered, None)
        result = Poly.__new__(Poly)
        result.nvars = self.nvars
        result.terms = out
        return result

    def evaluate(self, point: Iterable[int | Fraction]) -> Fraction:
        """Exact value at a rational point (one value per variable)."""
        values = [Fraction(v) for v in point]
        if len(values) != self.nvars:
            raise ValueError(f"point has length {len(values)}, expected {self.nvars}")
        total = _ZERO
        for exps, coeff in self.terms.items():
            term = coeff
            for e, v in zip(exps, values):
                if e:
                    term *= v**e
            total += term
        return total

    # -- structure ----------------------------------------------------------

    def total_degree(self) -> int:
        """Maximum total degree of a stored term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(exps) for exps in self.terms)

    def leading(self) -> tuple[Exponents, Fraction]:
        """Leading (monomial, coefficient) in graded lex order."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def coefficient(self, exponents: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(exponents), _ZERO)

    def homogeneous_component(self, degree: int) -> Poly:
        """Sub-polynomial of terms whose total degree equals ``degree``."""
        result = Poly.__new__(Poly)
        result.nvars = self.nvars
        result.terms = {e: c for e, c in self.terms.items() if sum(e) == degree}
        return result

    def items_canonical(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in the canonical listing order (deterministic serialization)."""
        return sorted(self.terms.items(), key=lambda item: listing_key(item[0]))

    def lift(self, nvars: int, index: int) -> Poly:
        """Embed a univariate polynomial as a polynomial in variable ``index``
        of an ``nvars``-variable ring (substitute x -> x_index)."""
        if self.nvars != 1:
            raise ValueError("lift() applies to univariate polynomials only")
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        out: dict[Exponents, Fraction] = {}
        for (e,), coeff in self.terms.items():
            exps = [0] * nvars
            exps[index] = e
            out[tuple(exps)] = coeff
        result = Poly.__new__(Poly)
        result.nvars = nvars
        result.terms = out
        return result

    # -- exact division ------------------------------------------------------

    def divide_exact(self, divisor: Poly) -> Poly:
        """Return q with ``self == q * divisor`` exactly.

        Single-divisor reduction by the graded-lex leading term.  If the
        division is not exact the reduction stalls and NonZeroRemainder is
        raised; a non-zero remainder is never returned silently.
        """
        self._check_same_space(divisor)
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        lead_exps, lead_coeff = divisor.leading()
        quotient: dict[Exponents, Fraction] = {}
        remainder = self
        while remainder.terms:
            rexps, rcoeff = remainder.leading()
            texps = tuple(r - d for r, d in zip(rexps, lead_exps))
            if any(e < 0 for e in texps):
                raise NonZeroRemainder(
                    f"leading term x^{rexps} not divisible by x^{lead_exps}"
                )
            tcoeff = rcoeff / lead_coeff
            quotient[texps] = quotient.get(texps, _ZERO) + tcoeff
            remainder = remainder - Poly(self.nvars, {texps: tcoeff}) * divisor
        return Poly(self.nvars, quotient)

    # -- serialization -------------------------------------------------------

    def to_json_terms(self) -> list[list]:
        """Canonically ordered ``[[exponents...], "p/q"]`` pairs (JSON-ready)."""
        return [
            [list(exps), format_rational(coeff)]
            for exps, coeff in self.items_canonical()
        ]

    @classmethod
    def from_json_terms(cls, nvars: int, data: Iterable) -> Poly:
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in data:
            terms[tuple(int(e) for e in exps)] = parse_rational(str(coeff))
        return cls(nvars, terms)

    def __iter__(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self.items_canonical())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.items_canonical():
            factors = [
                f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps)
                if e
            ]
            body = "*".join(factors)
            if body:
                if coeff == 1:
                    parts.append(body)
                elif coeff == -1:
                    parts.append(f"-{body}")
                else:
                    parts.append(f"{format_rational(coeff)}*{body}")
            else:
                parts.append(format_rational(coeff))
        return " + ".join(parts).replace("+ -", "- ")


def weierstrass_cubic(g2: Fraction, g3: Fraction) -> Poly:
    """The univariate cubic 4x^3 - g2*x - g3 whose roots are the half-period values."""
    return Poly(
        1, {(3,): Fraction(4), (1,): -Fraction(g2), (0,): -Fraction(g3)}
    )
