"""Model parameters, gauge masks, and the valid-sector arithmetic.

A parameter set fixes the particle number, the two coupling exponents, the
polynomial degree cutoff, and the three roots of the quartic-free cubic
p(z) = 4 z^3 - g2 z - g3 = 4 (z - e1)(z - e2)(z - e3).  The roots must sum to
zero; g2 and g3 are then determined and exposed as properties.

A gauge mask selects a subset of the three roots.  Each selected root e_i
contributes a factor (z - e_i)^nu to the gauge prefactor, with the common
exponent nu = 1/2 - b, and shifts the invariant degree cutoff from m to
mt = m + n_f * (b - 1/2) where n_f is the mask size.  A mask is usable only
when mt is a non-negative integer, since mt is the top tau-degree of the
preserved polynomial space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import InvalidDegree
from .polynomials import RationalLike

MASK_NAMES = ("none", "1", "2", "3", "12", "13", "23", "123")


@dataclass(frozen=True, order=True)
class GaugeMask:
    """An ordered subset of the root indices {1, 2, 3}."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError(f"mask indices must be sorted and distinct, got {self.indices}")
        if any(i not in (1, 2, 3) for i in self.indices):
            raise ValueError(f"mask indices must lie in {{1, 2, 3}}, got {self.indices}")

    @classmethod
    def from_string(cls, text: str) -> "GaugeMask":
        """Parse 'none' (empty mask) or a digit string such as '13' or '123'."""
        text = text.strip().lower()
        if text in ("none", "0", ""):
            return cls(())
        if not all(c in "123" for c in text):
            raise ValueError(f"mask must be 'none' or digits from 1-3, got {text!r}")
        return cls(tuple(sorted(set(int(c) for c in text))))

    def __str__(self) -> str:
        return "".join(str(i) for i in self.indices) if self.indices else "none"

    @property
    def n_f(self) -> int:
        """Number of selected roots (the count of gauge factors)."""
        return len(self.indices)

    def __contains__(self, i: int) -> bool:
        return i in self.indices


ALL_MASKS: tuple[GaugeMask, ...] = tuple(
    GaugeMask.from_string(name) for name in MASK_NAMES
)


def _as_fraction(x: RationalLike, name: str) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"{name} must be exact (int, Fraction, or string), got float")
    return Fraction(x)


def cubic_invariants(
    roots: tuple[RationalLike, RationalLike, RationalLike],
) -> tuple[Fraction, Fraction]:
    """(g2, g3) of the cubic 4(z-e1)(z-e2)(z-e3) = 4z^3 - g2 z - g3.

    Requires the roots to sum to zero, otherwise the z^2 term would survive.
    """
    e1, e2, e3 = (Fraction(r) for r in roots)
    if e1 + e2 + e3 != 0:
        raise ValueError(f"roots must sum to zero, got {e1} + {e2} + {e3}")
    return -4 * (e1 * e2 + e1 * e3 + e2 * e3), 4 * e1 * e2 * e3


@dataclass(frozen=True)
class ModelParams:
    """Exact parameter set: particle number, couplings, degree, cubic roots."""

    nvars: int
    coupling_a: Fraction
    coupling_b: Fraction
    degree_m: Fraction
    roots: tuple[Fraction, Fraction, Fraction]

    def __init__(
        self,
        nvars: int,
        coupling_a: RationalLike,
        coupling_b: RationalLike,
        degree_m: RationalLike,
        roots: tuple[RationalLike, RationalLike, RationalLike] = (2, -1, -1),
    ) -> None:
        if nvars < 1:
            raise ValueError(f"nvars must be >= 1, got {nvars}")
        a = _as_fraction(coupling_a, "coupling_a")
        b = _as_fraction(coupling_b, "coupling_b")
        m = _as_fraction(degree_m, "degree_m")
        if len(roots) != 3:
            raise ValueError(f"exactly three roots required, got {len(roots)}")
        e = tuple(_as_fraction(r, "root") for r in roots)
        if sum(e) != 0:
            raise ValueError(f"roots must sum to zero, got {e[0]} + {e[1]} + {e[2]}")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "coupling_a", a)
        object.__setattr__(self, "coupling_b", b)
        object.__setattr__(self, "degree_m", m)
        object.__setattr__(self, "roots", e)

    @property
    def g2(self) -> Fraction:
        """Quadratic cubic invariant: -4 (e1 e2 + e1 e3 + e2 e3)."""
        e1, e2, e3 = self.roots
        return -4 * (e1 * e2 + e1 * e3 + e2 * e3)

    @property
    def g3(self) -> Fraction:
        """Cubic invariant: 4 e1 e2 e3."""
        e1, e2, e3 = self.roots
        return 4 * e1 * e2 * e3

    def gauge_exponent(self) -> Fraction:
        """Exponent nu = 1/2 - b carried by every masked root factor."""
        return Fraction(1, 2) - self.coupling_b

    def shifted_degree(self, mask: GaugeMask) -> Fraction:
        """Degree cutoff mt = m + n_f (b - 1/2) of the sector gauged by `mask`."""
        return self.degree_m + mask.n_f * (self.coupling_b - Fraction(1, 2))

    def sector_is_valid(self, mask: GaugeMask) -> bool:
        """Whether the masked sector has a non-negative integer degree cutoff."""
        mt = self.shifted_degree(mask)
        return mt.denominator == 1 and mt >= 0

    def basis_dimension(self, mask: GaugeMask) -> int:
        """Dimension C(N + mt, N) of the preserved space for a valid mask."""
        mt = self.shifted_degree(mask)
        if not self.sector_is_valid(mask):
            raise InvalidDegree(
                f"mask {mask} has non-integer or negative degree cutoff {mt}"
            )
        return comb(self.nvars + int(mt), self.nvars)


def external_field_coupling(params: ModelParams) -> Fraction:
    """Coefficient pairing the external field with the algebraic sector.

    Equals [2m + 2a(N-1) + 4b] [2m + 1 + 2a(N-1) + 2b]; the model is
    algebraised at exactly this coupling strength.
    """
    a, b, m = params.coupling_a, params.coupling_b, params.degree_m
    n = params.nvars
    return (2 * m + 2 * a * (n - 1) + 4 * b) * (2 * m + 1 + 2 * a * (n - 1) + 2 * b)


def list_valid_masks(params: ModelParams) -> tuple[GaugeMask, ...]:
    """All masks whose sector cutoff mt is a non-negative integer.

    For generic b this is governed purely by whether m and m + n_f (b - 1/2)
    land on non-negative integers; at b = 1/2 every mask shares the cutoff m,
    but the gauge exponent nu vanishes so all masks coincide with the trivial
    one, and only the empty mask is reported.
    """
    if params.coupling_b == Fraction(1, 2):
        trivial = ALL_MASKS[0]
        return (trivial,) if params.sector_is_valid(trivial) else ()
    return tuple(mask for mask in ALL_MASKS if params.sector_is_valid(mask))
