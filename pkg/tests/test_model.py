"""Parameter sets, gauge masks, and sector bookkeeping."""

from fractions import Fraction

import pytest

from elliptic_qes.errors import InvalidDegree
from elliptic_qes.model import (
    ALL_MASKS,
    GaugeMask,
    ModelParams,
    cubic_invariants,
    external_field_coupling,
    list_valid_masks,
)


def test_mask_parsing():
    assert GaugeMask.from_string("none").indices == ()
    assert GaugeMask.from_string("").indices == ()
    assert GaugeMask.from_string("31").indices == (1, 3)
    assert GaugeMask.from_string("123").indices == (1, 2, 3)
    assert str(GaugeMask(())) == "none"
    assert str(GaugeMask((2, 3))) == "23"
    with pytest.raises(ValueError):
        GaugeMask.from_string("4")
    with pytest.raises(ValueError):
        GaugeMask((2, 1))
    assert 2 in GaugeMask((2, 3))
    assert 1 not in GaugeMask((2, 3))


def test_all_masks_listing():
    assert len(ALL_MASKS) == 8
    assert [str(m) for m in ALL_MASKS] == [
        "none", "1", "2", "3", "12", "13", "23", "123",
    ]


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(0, 0, 0, 1)
    with pytest.raises(ValueError):
        ModelParams(2, 0, 0, 1, (1, 1, 1))  # roots must sum to zero
    with pytest.raises(TypeError):
        ModelParams(2, 0.5, 0, 1)  # binary floats are not exact


def test_cubic_invariants():
    # roots (2, -1, -1): g2 = 12, g3 = 8
    assert cubic_invariants((2, -1, -1)) == (Fraction(12), Fraction(8))
    g2, g3 = cubic_invariants((Fraction(2), Fraction(-3, 2), Fraction(-1, 2)))
    # g2 = -4(e1 e2 + e1 e3 + e2 e3), g3 = 4 e1 e2 e3
    assert g2 == -4 * (2 * Fraction(-3, 2) + 2 * Fraction(-1, 2) + Fraction(3, 4))
    assert g3 == 4 * 2 * Fraction(-3, 2) * Fraction(-1, 2)
    with pytest.raises(ValueError):
        cubic_invariants((1, 2, 3))


def test_shifted_degree():
    p = ModelParams(2, 0, 0, 2)
    assert p.shifted_degree(GaugeMask(())) == 2
    assert p.shifted_degree(GaugeMask((1, 2))) == 1
    assert p.shifted_degree(GaugeMask((1,))) == Fraction(3, 2)
    half = ModelParams(2, 0, 0, Fraction(5, 2))
    assert half.shifted_degree(GaugeMask((3,))) == 2
    assert half.shifted_degree(GaugeMask((1, 2, 3))) == 1


def test_valid_masks_integer_degree():
    p = ModelParams(2, 0, 0, 2)
    assert [str(m) for m in list_valid_masks(p)] == ["none", "12", "13", "23"]
    assert p.basis_dimension(GaugeMask(())) == 6
    assert p.basis_dimension(GaugeMask((1, 2))) == 3
    with pytest.raises(InvalidDegree):
        p.basis_dimension(GaugeMask((1,)))


def test_valid_masks_half_integer_degree():
    p = ModelParams(2, 0, 0, Fraction(5, 2))
    assert [str(m) for m in list_valid_masks(p)] == ["1", "2", "3", "123"]
    assert p.basis_dimension(GaugeMask((1,))) == 6
    assert p.basis_dimension(GaugeMask((1, 2, 3))) == 3


def test_valid_masks_generic_and_degenerate_couplings():
    assert [str(m) for m in list_valid_masks(ModelParams(2, 0, Fraction(1, 4), 2))] == ["none"]
    assert [str(m) for m in list_valid_masks(ModelParams(2, 0, Fraction(1, 3), 1))] == ["none"]
    # at b = 1/2 the gauge exponent vanishes and all masks collapse to one sector
    assert [str(m) for m in list_valid_masks(ModelParams(2, 0, Fraction(1, 2), 2))] == ["none"]
    assert list_valid_masks(ModelParams(2, 0, Fraction(1, 2), Fraction(1, 2))) == ()


def test_gauge_exponent():
    assert ModelParams(2, 0, 0, 2).gauge_exponent() == Fraction(1, 2)
    assert ModelParams(2, 0, Fraction(1, 4), 2).gauge_exponent() == Fraction(1, 4)
    assert ModelParams(2, 0, Fraction(1, 2), 2).gauge_exponent() == 0


def test_field_coupling_product():
    # [2m + 2a(N-1) + 4b][2m + 1 + 2a(N-1) + 2b]
    assert external_field_coupling(ModelParams(2, 0, 0, 2)) == 20
    assert external_field_coupling(ModelParams(1, Fraction(7, 3), 0, 1)) == 6
    assert external_field_coupling(ModelParams(1, 0, 0, 0)) == 0
    # N=3, a=1/2, b=1/4, m=1: brackets are 5 and 11/2
    assert external_field_coupling(
        ModelParams(3, Fraction(1, 2), Fraction(1, 4), 1)
    ) == Fraction(55, 2)
