"""Gauge conjugation and exact application of the invariant-space Hamiltonian.

The spectral problem is worked on in z-space after two transformations.  The
first yields a second-order operator whose coefficients involve the cubic
p(z) = 4z^3 - g2 z - g3:

    H f = sum_k [ -p(z_k) f_kk ] - 2a sum_{k!=l} [ p(z_k)/(z_k - z_l) ] f_k
          - (b + 1/2) sum_k p'(z_k) f_k + V f ,

with the multiplicative potential V = m (12b + 8a(N-1) + 4m + 2) tau_1.  The
second conjugates by a product of root factors (z_k - e_i)^nu over a chosen
mask of cubic roots, with common exponent nu = 1/2 - b.  Conjugation is done
analytically once per variable: with lambda(z) = sum_{i in mask} nu/(z - e_i)
the transformed operator picks up

    q(z) = p(z) * lambda(z)                                (extra drift)
    s(z) = p(z) (lambda^2 + lambda') + (b + 1/2) p'(z) lambda(z)   (scalar)

and both must be polynomials for the conjugated operator to preserve
polynomial spaces.  q always is, since every masked factor divides p.  s is a
polynomial exactly when the residue nu (nu - 1/2 + b) p'(e_i) vanishes at each
masked root, which for simple roots means nu in {0, 1/2 - b}; any other
exponent leaves a genuine pole and raises NonCancellingPole.  This module
performs those divisions exactly, so the pole-cancellation claim is decided by
arithmetic rather than asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidDegree, NonCancellingPole, NonZeroRemainder
from .model import GaugeMask, ModelParams, cubic_invariants, external_field_coupling
from .polynomials import Poly, weierstrass_cubic
from .symmetric import elementary_symmetric, tau_to_z, z_to_tau

_HALF = Fraction(1, 2)


def potential_coefficient(params: ModelParams) -> Fraction:
    """Coefficient of tau_1 in the multiplicative potential term.

    Equals m (12b + 8a(N-1) + 4m + 2); it is part of the operator itself and
    does not change under gauge conjugation, so all masked sectors share it.
    """
    a, b, m = params.coupling_a, params.coupling_b, params.degree_m
    return m * (12 * b + 8 * a * (params.nvars - 1) + 4 * m + 2)


def raising_coefficient(params: ModelParams, mask: GaugeMask, degree: int | Fraction) -> Fraction:
    """Predicted degree-raising coefficient at the given tau-degree.

    The component of the gauged operator that raises tau-degree by one sends
    every degree-d monomial t to  coeff(d) * tau_1 * t  with

        coeff(d) = -4 (d - mt) (d + m + 2a(N-1) + (3 - n_f) b + (1 + n_f)/2) ,

    mt the sector's shifted degree cutoff.  The factor (d - mt) annihilates
    the top degree, which is what closes the operator on the finite space.
    """
    a, b, m = params.coupling_a, params.coupling_b, params.degree_m
    mt = params.shifted_degree(mask)
    d = Fraction(degree)
    return -4 * (d - mt) * (
        d + m + 2 * a * (params.nvars - 1) + (3 - mask.n_f) * b + Fraction(1 + mask.n_f, 2)
    )


def gauge_polynomials(
    roots: tuple[Fraction, Fraction, Fraction],
    mask: GaugeMask,
    exponent: Fraction,
    coupling_b: Fraction,
) -> tuple[Poly, Poly]:
    """Exact single-variable gauge polynomials (q, s) for a masked exponent.

    Works over the common denominator D(z) = prod_{i in mask} (z - e_i):
    lambda = A/D with A = nu * sum_i prod_{j != i} (z - e_j), so

        q = p A / D ,
        s = [ p (A^2 + A'D - AD') + (b + 1/2) p' A D ] / D^2 .

    The q division is always exact.  The s division is exact precisely when
    every pole cancels; a stall raises NonCancellingPole.
    """
    g2, g3 = cubic_invariants(roots)
    p = weierstrass_cubic(g2, g3)
    dp = p.diff(0)
    if not mask.indices:
        return Poly.zero(1), Poly.zero(1)

    z = Poly.variable(1, 0)
    factors = [z - Poly.constant(1, roots[i - 1]) for i in mask.indices]
    denom = Poly.constant(1, 1)
    for f in factors:
        denom = denom * f
    numer_a = Poly.zero(1)
    for i in range(len(factors)):
        partial = Poly.constant(1, 1)
        for j, f in enumerate(factors):
            if j != i:
                partial = partial * f
        numer_a = numer_a + partial
    numer_a = numer_a * exponent

    charge = (p * numer_a).divide_exact(denom)

    da = numer_a.diff(0)
    dd = denom.diff(0)
    scalar_numer = p * (numer_a * numer_a + da * denom - numer_a * dd) + (
        (coupling_b + _HALF) * (dp * numer_a * denom)
    )
    try:
        scalar = scalar_numer.divide_exact(denom * denom)
    except NonZeroRemainder as exc:
        raise NonCancellingPole(
            f"gauge exponent {exponent} leaves an uncancelled pole at a root of "
            f"the cubic for mask {mask}; only exponents 0 and 1/2 - b cancel"
        ) from exc
    return charge, scalar


@dataclass(frozen=True, eq=False)
class GaugedOperator:
    """One algebraised sector: exact operator data, ready to apply.

    Single-variable ingredients are stored once (cubic, its derivative, the
    gauge charge q and gauge scalar s) along with their lifts into each of the
    N variables, so repeated applications only pay for polynomial arithmetic.
    """

    params: ModelParams
    mask: GaugeMask
    exponent: Fraction
    cutoff: int
    field_coupling: Fraction
    cubic: Poly
    cubic_prime: Poly
    charge: Poly
    scalar: Poly
    _lifted: tuple[tuple[Poly, Poly, Poly, Poly], ...]

    @property
    def nvars(self) -> int:
        return self.params.nvars

    def apply(self, f: Poly) -> Poly:
        """Exact image of a tau-space polynomial under the gauged operator.

        The input is expanded to z-space, transported through

            sum_k [ -p_k F_kk - (2 q_k + (b + 1/2) p'_k) F_k - s_k F ]
            - 2a sum_{k<l} [ (p_k F_k - p_l F_l) + (q_k - q_l) F ] / (z_k - z_l)
            + V F ,

        and reduced back to the tau basis.  Each pairwise difference quotient
        is an exact polynomial division; for symmetric F divisibility is an
        identity (the numerators are antisymmetric in z_k, z_l), so a stall
        there or in the final reduction reports NonCancellingPole or
        NotSymmetric respectively, both of which mean the input or engine
        broke an invariant.
        """
        n = self.nvars
        if f.nvars != n:
            raise ValueError(f"polynomial has {f.nvars} variables, operator expects {n}")
        b_half = self.params.coupling_b + _HALF
        big_f = tau_to_z(f)
        derivs = [big_f.diff(k) for k in range(n)]

        out = Poly.zero(n)
        for k, (p_k, dp_k, q_k, s_k) in enumerate(self._lifted):
            f_k = derivs[k]
            f_kk = f_k.diff(k)
            out = out - p_k * f_kk - (2 * q_k + b_half * dp_k) * f_k - s_k * big_f

        a2 = 2 * self.params.coupling_a
        if a2:
            for k in range(n):
                p_k, _, q_k, _ = self._lifted[k]
                for l in range(k + 1, n):
                    p_l, _, q_l, _ = self._lifted[l]
                    numer = (p_k * derivs[k] - p_l * derivs[l]) + (q_k - q_l) * big_f
                    divisor = Poly.variable(n, k) - Poly.variable(n, l)
                    try:
                        quotient = numer.divide_exact(divisor)
                    except NonZeroRemainder as exc:
                        raise NonCancellingPole(
                            f"pair term for variables {k + 1}, {l + 1} is not a "
                            "polynomial; the input is not symmetric"
                        ) from exc
                    out = out - a2 * quotient

        tau1 = elementary_symmetric(n, 1)
        out = out + potential_coefficient(self.params) * (tau1 * big_f)
        return z_to_tau(out)


def build_gauged_operator(
    params: ModelParams,
    mask: GaugeMask,
    *,
    exponent: Fraction | None = None,
) -> GaugedOperator:
    """Construct the exact gauged operator for one mask.

    Raises InvalidDegree unless the sector's shifted cutoff is a non-negative
    integer, and NonCancellingPole if the gauge exponent fails to cancel the
    poles it introduces.  ``exponent`` overrides the natural value 1/2 - b;
    it exists to let callers demonstrate the failure case deliberately and
    leaves the degree bookkeeping untouched.
    """
    mt = params.shifted_degree(mask)
    if mt.denominator != 1 or mt < 0:
        raise InvalidDegree(
            f"mask {mask} shifts the degree cutoff to {mt}, which is not a "
            "non-negative integer; no invariant space exists"
        )
    nu = params.gauge_exponent() if exponent is None else Fraction(exponent)
    charge, scalar = gauge_polynomials(params.roots, mask, nu, params.coupling_b)

    cubic = weierstrass_cubic(params.g2, params.g3)
    cubic_prime = cubic.diff(0)
    n = params.nvars
    lifted = tuple(
        (
            cubic.lift(n, k),
            cubic_prime.lift(n, k),
            charge.lift(n, k),
            scalar.lift(n, k),
        )
        for k in range(n)
    )
    return GaugedOperator(
        params=params,
        mask=mask,
        exponent=nu,
        cutoff=int(mt),
        field_coupling=external_field_coupling(params),
        cubic=cubic,
        cubic_prime=cubic_prime,
        charge=charge,
        scalar=scalar,
        _lifted=lifted,
    )
