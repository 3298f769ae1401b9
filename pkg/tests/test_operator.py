"""Gauge polynomials and exact application of the gauged operator."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elliptic_qes.errors import InvalidDegree, NonCancellingPole
from elliptic_qes.model import GaugeMask, ModelParams
from elliptic_qes.operator import (
    build_gauged_operator,
    gauge_polynomials,
    potential_coefficient,
    raising_coefficient,
)
from elliptic_qes.polynomials import Poly

EMPTY = GaugeMask(())
HALF = Fraction(1, 2)


def rationals(lo=-3, hi=3, dens=(1, 2, 4)):
    return st.builds(Fraction, st.integers(lo, hi), st.sampled_from(dens))


# -- gauge polynomials ----------------------------------------------------------


def test_empty_mask_is_trivial_gauge():
    q, s = gauge_polynomials(
        (Fraction(2), Fraction(-1), Fraction(-1)), EMPTY, HALF, Fraction(0)
    )
    assert q == Poly.zero(1)
    assert s == Poly.zero(1)


@pytest.mark.parametrize("eps", [Fraction(0), Fraction(1, 4), Fraction(1, 2)])
def test_double_mask_gauge_scalar_closed_form(eps):
    # mask {2,3} at b=0: working through the conjugation by hand with
    # A = z + e1/2 and D = (z-e2)(z-e3) collapses s to 6z - 3 e1 and
    # q to 4 (z - e1)(z + e1/2), independent of e2 and e3
    roots = (Fraction(2), -1 + eps, -1 - eps)
    q, s = gauge_polynomials(roots, GaugeMask((2, 3)), HALF, Fraction(0))
    z = Poly.variable(1, 0)
    e1 = Poly.constant(1, 2)
    assert s == z * 6 - e1 * 3
    assert q == (z - e1) * (z + Poly.constant(1, 1)) * 4


def test_simple_root_rejects_perturbed_exponent():
    roots = (Fraction(2), Fraction(-3, 4), Fraction(-5, 4))
    for mask in (GaugeMask((1,)), GaugeMask((1, 2)), GaugeMask((1, 2, 3))):
        with pytest.raises(NonCancellingPole):
            gauge_polynomials(roots, mask, Fraction(1, 3), Fraction(0))


def test_double_root_cancels_any_exponent():
    # e2 = e3 = -1 is a double root of the cubic, so the residue that
    # normally blocks exponents outside {0, 1/2 - b} vanishes identically
    roots = (Fraction(2), Fraction(-1), Fraction(-1))
    q, s = gauge_polynomials(roots, GaugeMask((2, 3)), Fraction(1, 3), Fraction(0))
    assert q.total_degree() == 2
    assert s.total_degree() >= 0


@given(rationals())
def test_zero_exponent_always_cancels(b):
    roots = (Fraction(2), Fraction(-3, 4), Fraction(-5, 4))
    for mask in (GaugeMask((2,)), GaugeMask((1, 3))):
        q, s = gauge_polynomials(roots, mask, Fraction(0), b)
        assert q == Poly.zero(1)
        assert s == Poly.zero(1)


# -- operator construction ---------------------------------------------------------


def test_invalid_sector_raises():
    with pytest.raises(InvalidDegree):
        build_gauged_operator(ModelParams(2, 0, 0, 2), GaugeMask((1,)))
    with pytest.raises(InvalidDegree):
        build_gauged_operator(ModelParams(2, 0, Fraction(1, 4), 2), GaugeMask((1, 2)))


def test_forced_exponent_reaches_pole_check():
    # the sector is valid, so the forced exponent is what fails
    with pytest.raises(NonCancellingPole):
        build_gauged_operator(
            ModelParams(2, 0, 0, 2), GaugeMask((1, 2)), exponent=Fraction(1, 3)
        )


def test_cutoff_and_coupling_fields():
    op = build_gauged_operator(ModelParams(2, 1, 0, 2), GaugeMask((2, 3)))
    assert op.cutoff == 1
    assert op.exponent == HALF
    # [2m + 2a(N-1) + 4b][2m + 1 + 2a(N-1) + 2b] at N=2, a=1, b=0, m=2
    assert op.field_coupling == Fraction(6) * Fraction(7)


# -- applying the operator ------------------------------------------------------------


def test_apply_to_constant_ungauged():
    a, b = Fraction(1, 3), Fraction(-2, 5)
    op = build_gauged_operator(ModelParams(2, a, b, 2), EMPTY)
    image = op.apply(Poly.constant(2, 1))
    coeff = 16 * a + 24 * b + 20
    assert image == Poly(2, {(1, 0): coeff})


def test_apply_to_first_elementary_ungauged():
    a, b = Fraction(1, 3), Fraction(-2, 5)
    roots = (Fraction(2), Fraction(-1, 2), Fraction(-3, 2))
    g2 = -4 * (roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2])
    op = build_gauged_operator(ModelParams(2, a, b, 2, roots), EMPTY)
    image = op.apply(Poly(2, {(1, 0): Fraction(1)}))
    expected = Poly(
        2,
        {
            (0, 0): g2 * (2 * a + 2 * b + 1),
            (0, 1): 8 * a + 24 * b + 12,
            (2, 0): 8 * a + 12 * b + 14,
        },
    )
    assert image == expected


def test_apply_to_constant_double_mask():
    # the gauged sector keeping root 1 unmasked sends 1 to
    # (6+4a) e1 + (14+8a) t1
    a = Fraction(1, 3)
    roots = (Fraction(2), Fraction(-1, 2), Fraction(-3, 2))
    op = build_gauged_operator(ModelParams(2, a, 0, 2, roots), GaugeMask((2, 3)))
    image = op.apply(Poly.constant(2, 1))
    expected = Poly(
        2, {(0, 0): (6 + 4 * a) * roots[0], (1, 0): 14 + 8 * a}
    )
    assert image == expected


@given(rationals(), rationals(), st.integers(1, 3))
def test_potential_coefficient_property(a, b, m):
    # for the ungauged sector the image of 1 is the potential term alone
    params = ModelParams(2, a, b, m)
    op = build_gauged_operator(params, EMPTY)
    expected = potential_coefficient(params)
    assert op.apply(Poly.constant(2, 1)) == Poly(2, {(1, 0): expected})
    assert expected == Fraction(m) * (12 * b + 8 * a + 4 * m + 2)


@given(rationals(), rationals(), st.integers(0, 3))
def test_potential_matches_raising_at_degree_zero(a, b, m):
    params = ModelParams(2, a, b, m)
    assert potential_coefficient(params) == raising_coefficient(params, EMPTY, 0)


def test_raising_coefficient_vanishes_at_cutoff():
    params = ModelParams(2, Fraction(1, 2), Fraction(1, 4), 3)
    assert raising_coefficient(params, EMPTY, 3) == 0
    assert raising_coefficient(params, EMPTY, 2) != 0


def test_raising_coefficient_examples():
    params = ModelParams(2, Fraction(1, 7), Fraction(2, 3), 2)
    a, b = params.coupling_a, params.coupling_b
    # ungauged degree-0 and degree-1 coefficients
    assert raising_coefficient(params, EMPTY, 0) == 16 * a + 24 * b + 20
    assert raising_coefficient(params, EMPTY, 1) == 8 * a + 12 * b + 14
    # two-root mask at b=0, degree 0
    params0 = ModelParams(2, a, 0, 2)
    assert raising_coefficient(params0, GaugeMask((2, 3)), 0) == 14 + 8 * a


@given(rationals(-2, 2), rationals(-2, 2))
def test_apply_is_linear(alpha, beta):
    op = build_gauged_operator(ModelParams(2, Fraction(1, 2), 0, 2), EMPTY)
    f = Poly(2, {(1, 0): Fraction(1)})
    g = Poly(2, {(0, 1): Fraction(1), (0, 0): Fraction(2)})
    combined = op.apply(f * alpha + g * beta)
    assert combined == op.apply(f) * alpha + op.apply(g) * beta


def test_one_variable_images():
    # N=1, b=0, m=2, roots (2,-1,-1): images of 1, z, z^2 derived by hand
    op = build_gauged_operator(ModelParams(1, 0, 0, 2), EMPTY)
    one = Poly.constant(1, 1)
    z = Poly.variable(1, 0)
    assert op.apply(one) == z * 20
    assert op.apply(z) == Poly(1, {(0,): Fraction(6), (2,): Fraction(14)})
    assert op.apply(z * z) == Poly(1, {(0,): Fraction(16), (1,): Fraction(36)})
