"""Exact matrix assembly, closure detection, and serialization."""

import dataclasses
from fractions import Fraction

import pytest

from elliptic_qes.errors import OperatorNotClosed
from elliptic_qes.matrices import (
    OperatorMatrix,
    build_matrix,
    export_matrix,
    matrix_from_json,
    raising_coefficient_check,
)
from elliptic_qes.model import GaugeMask, ModelParams
from elliptic_qes.operator import build_gauged_operator
from elliptic_qes.oracles import (
    mask_for_unmasked_index,
    reference_double_mask_matrix,
    reference_empty_mask_matrix,
)

EMPTY = GaugeMask(())


def F(x) -> Fraction:
    return Fraction(x)


def test_smallest_nontrivial_matrix():
    mat = build_matrix(build_gauged_operator(ModelParams(1, 0, 0, 1), EMPTY))
    assert mat.rows == ((F(0), F(6)), (F(6), F(0)))


def test_one_variable_degree_two_matrix():
    mat = build_matrix(build_gauged_operator(ModelParams(1, 0, 0, 2), EMPTY))
    assert mat.rows == (
        (F(0), F(6), F(16)),
        (F(20), F(0), F(36)),
        (F(0), F(14), F(0)),
    )


def test_dim_one_sector():
    # N=1, m=0: the space is the constants and the operator annihilates them
    mat = build_matrix(build_gauged_operator(ModelParams(1, 0, 0, 0), EMPTY))
    assert mat.rows == ((F(0),),)


def test_reference_equality_one_tuple():
    a, b = Fraction(2, 3), Fraction(-1, 4)
    roots = (Fraction(2), Fraction(-1, 2), Fraction(-3, 2))
    mat = build_matrix(build_gauged_operator(ModelParams(2, a, b, 2, roots), EMPTY))
    assert mat.rows == reference_empty_mask_matrix(a, b, roots)
    params0 = ModelParams(2, a, 0, 2, roots)
    for i in (1, 2, 3):
        built = build_matrix(build_gauged_operator(params0, mask_for_unmasked_index(i)))
        assert built.rows == reference_double_mask_matrix(a, roots, i)


def test_entry_access_and_trace():
    mat = build_matrix(build_gauged_operator(ModelParams(1, 0, 0, 1), EMPTY))
    assert mat.dim == 2
    assert mat.entry(0, 1) == 6
    assert mat.column(0) == (F(0), F(6))
    assert mat.trace() == 0


def test_determinant_and_characteristic_values():
    mat = build_matrix(build_gauged_operator(ModelParams(1, 0, 0, 1), EMPTY))
    assert mat.determinant() == -36
    assert mat.char_poly_eval(6) == 0
    assert mat.char_poly_eval(-6) == 0
    assert mat.char_poly_eval(0) == -36
    big = build_matrix(build_gauged_operator(ModelParams(1, 0, 0, 2), EMPTY))
    assert big.determinant() == 4480
    for eig in (-20, -8, 28):
        assert big.char_poly_eval(eig) == 0


def test_raising_check_both_paths_agree():
    op = build_gauged_operator(
        ModelParams(2, Fraction(1, 3), Fraction(-1, 2), 2), EMPTY
    )
    mat = build_matrix(op)
    for degree in range(op.cutoff + 1):
        assert raising_coefficient_check(op, degree) is True
        assert raising_coefficient_check(op, degree, mat) is True
    with pytest.raises(ValueError):
        raising_coefficient_check(op, op.cutoff + 1)


def test_raising_check_detects_tampering():
    op = build_gauged_operator(ModelParams(2, 0, 0, 2), EMPTY)
    mat = build_matrix(op)
    rows = [list(r) for r in mat.rows]
    # corrupt the degree-raising entry (t1 component of the image of 1)
    rows[1][0] += 1
    tampered = OperatorMatrix(mat.basis, tuple(tuple(r) for r in rows))
    assert raising_coefficient_check(op, 0, tampered) is False


def test_closure_violation_detected():
    op = build_gauged_operator(ModelParams(1, 0, 0, 2), EMPTY)
    # the same operator on a truncated space no longer closes
    truncated = dataclasses.replace(op, cutoff=1)
    with pytest.raises(OperatorNotClosed):
        build_matrix(truncated)


def test_json_round_trip():
    mat = build_matrix(
        build_gauged_operator(
            ModelParams(2, Fraction(1, 3), Fraction(2, 5), 2), EMPTY
        )
    )
    again = matrix_from_json(export_matrix(mat, "json"))
    assert again == mat
    assert again.rows == mat.rows


def test_csv_export_shape():
    mat = build_matrix(build_gauged_operator(ModelParams(1, 0, 0, 1), EMPTY))
    text = export_matrix(mat, "csv")
    assert text.splitlines() == ["0.0,6.0", "6.0,0.0"]
    with pytest.raises(ValueError):
        export_matrix(mat, "xml")


def test_root_relabeling_preserves_characteristic_polynomial():
    # permuting root labels is a change of basis: characteristic polynomials
    # agree, checked at dim+1 rational points
    a = Fraction(1, 2)
    roots = (Fraction(2), Fraction(-1, 2), Fraction(-3, 2))
    swapped = (Fraction(2), Fraction(-3, 2), Fraction(-1, 2))
    m1 = build_matrix(build_gauged_operator(ModelParams(2, a, 0, 2, roots), EMPTY))
    m2 = build_matrix(build_gauged_operator(ModelParams(2, a, 0, 2, swapped), EMPTY))
    for t in range(m1.dim + 1):
        assert m1.char_poly_eval(t) == m2.char_poly_eval(t)
    # a mask tracking the swapped root keeps the spectrum as well
    g1 = build_matrix(
        build_gauged_operator(ModelParams(2, a, 0, 2, roots), GaugeMask((1, 2)))
    )
    g2 = build_matrix(
        build_gauged_operator(ModelParams(2, a, 0, 2, swapped), GaugeMask((1, 3)))
    )
    for t in range(g1.dim + 1):
        assert g1.char_poly_eval(t) == g2.char_poly_eval(t)
