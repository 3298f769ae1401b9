"""Floating-point eigensolving checked against numpy and exact invariants."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elliptic_qes.matrices import build_matrix
from elliptic_qes.model import GaugeMask, ModelParams
from elliptic_qes.operator import build_gauged_operator
from elliptic_qes.spectral import eigenvalues, eigenvector, spectrum_of, to_float
from elliptic_qes.symmetric import enumerate_basis
from elliptic_qes.matrices import OperatorMatrix


def match_defect(xs, ys) -> float:
    """Greedy nearest-partner matching distance between two spectra."""
    remaining = list(ys)
    worst = 0.0
    for x in xs:
        j = min(range(len(remaining)), key=lambda i: abs(remaining[i] - x))
        worst = max(worst, abs(remaining.pop(j) - x))
    return worst


def exact_int_det(rows) -> Fraction:
    n = len(rows)
    work = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det *= work[col][col]
        inv = 1 / work[col][col]
        for r in range(col + 1, n):
            factor = work[r][col] * inv
            if factor:
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return det


# -- examples -----------------------------------------------------------------


def test_symmetric_two_by_two():
    spec = eigenvalues(np.array([[0.0, 6.0], [6.0, 0.0]]))
    assert spec.values == (pytest.approx(-6.0), pytest.approx(6.0))


def test_rotation_generator_is_complex():
    spec = eigenvalues(np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert spec.values[0] == pytest.approx(-1j)
    assert spec.values[1] == pytest.approx(1j)
    with pytest.raises(ValueError):
        spec.real_values()


def test_trivial_cases():
    assert eigenvalues(np.array([[7.0]])).values == (7.0,)
    assert eigenvalues(np.zeros((3, 3))).values == (0.0, 0.0, 0.0)
    spec = eigenvalues(np.diag([3.0, -2.0, 5.0]))
    assert spec.values == (pytest.approx(-2.0), pytest.approx(3.0), pytest.approx(5.0))


def test_defective_block():
    spec = eigenvalues(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert match_defect(spec.values, [1.0, 1.0]) < 1e-7


def test_triangular_matrix():
    t = np.triu(np.arange(1.0, 17.0).reshape(4, 4))
    spec = eigenvalues(t)
    assert match_defect(spec.values, np.diag(t)) < 1e-8 * np.linalg.norm(t)


def test_badly_scaled_matrix_is_balanced():
    base = np.array([[1.0, 2.0, 0.5], [0.25, -1.0, 1.0], [2.0, 0.5, 3.0]])
    d = np.diag([1e8, 1.0, 1e-8])
    scaled = d @ base @ np.linalg.inv(d)
    defect = match_defect(eigenvalues(scaled).values, np.linalg.eigvals(base))
    assert defect < 1e-6


def test_input_validation():
    with pytest.raises(ValueError):
        eigenvalues(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues(np.array([[np.nan, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        eigenvalues(np.zeros((0, 0)))


def test_to_float_overflow():
    basis = enumerate_basis(1, 0)
    huge = OperatorMatrix(basis, ((Fraction(10) ** 400,),))
    with pytest.raises(ValueError):
        to_float(huge)


# -- agreement with numpy --------------------------------------------------------


@settings(max_examples=30)
@given(st.integers(0, 10_000), st.integers(2, 8))
def test_matches_numpy_on_random_matrices(seed, dim):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((dim, dim)) * rng.choice([0.1, 1.0, 10.0])
    mine = eigenvalues(m).values
    reference = np.linalg.eigvals(m)
    scale = max(1.0, float(np.max(np.abs(reference))))
    assert match_defect(mine, reference) < 1e-8 * scale


@settings(max_examples=30)
@given(st.integers(0, 10_000), st.integers(2, 7))
def test_matches_numpy_on_symmetric_matrices(seed, dim):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((dim, dim))
    m = m + m.T
    mine = eigenvalues(m).values
    reference = sorted(np.linalg.eigvalsh(m))
    assert match_defect(mine, reference) < 1e-8 * max(1.0, np.max(np.abs(reference)))


# -- invariants -------------------------------------------------------------------


@settings(max_examples=40)
@given(st.integers(0, 10_000), st.integers(2, 5))
def test_trace_determinant_conjugates_on_integer_matrices(seed, dim):
    rng = np.random.default_rng(seed)
    ints = rng.integers(-9, 10, size=(dim, dim))
    m = ints.astype(float)
    spec = eigenvalues(m)
    scale = max(1.0, float(np.linalg.norm(m)))
    assert abs(sum(spec.values) - np.trace(m)) < 1e-9 * scale
    det = exact_int_det(ints.tolist())
    product = complex(1.0)
    for v in spec.values:
        product *= v
    assert abs(product - float(det)) <= 1e-8 * max(1.0, abs(float(det)))
    complex_part = [v for v in spec.values if abs(v.imag) > 1e-7 * (1 + abs(v.real))]
    assert match_defect(complex_part, [v.conjugate() for v in complex_part]) < 1e-6 * scale


def test_sorting_convention():
    spec = eigenvalues(np.array([[0.0, -4.0], [4.0, 0.0]]))
    assert spec.values[0].imag < spec.values[1].imag
    spec = eigenvalues(np.diag([5.0, -5.0]))
    assert spec.values[0].real < spec.values[1].real


# -- eigenvectors --------------------------------------------------------------------


def test_eigenvector_symmetric_pair():
    m = np.array([[0.0, 6.0], [6.0, 0.0]])
    v = eigenvector(m, 6.0)
    assert np.linalg.norm(m @ v - 6.0 * v) <= 1e-8 * np.linalg.norm(m)
    assert abs(abs(v[0]) - abs(v[1])) < 1e-9
    w = eigenvector(m, -6.0)
    assert abs(np.vdot(w, v)) < 1e-9  # orthogonal directions


def test_eigenvector_off_balance_block():
    # [[0, 6], [6, 0]] written with g2/2 = 6 on one side
    m = np.array([[0.0, 6.0], [6.0, 0.0]])
    v = eigenvector(m, 6.0)
    ratio = v[1] / v[0]
    assert ratio == pytest.approx(1.0, abs=1e-8)


def test_eigenvector_identity_and_triangular():
    v = eigenvector(np.eye(3), 1.0)
    assert np.linalg.norm(v) == pytest.approx(1.0)
    m = np.array([[2.0, 1.0], [0.0, 3.0]])
    v = eigenvector(m, 2.0)
    assert abs(v[1]) < 1e-9


def test_eigenvector_complex_value():
    m = np.array([[0.0, -1.0], [1.0, 0.0]])
    v = eigenvector(m, 1j)
    assert np.linalg.norm(m @ v - 1j * v) <= 1e-8


# -- integration with exact matrices ----------------------------------------------------


def test_spectrum_of_exact_matrix():
    mat = build_matrix(build_gauged_operator(ModelParams(1, 0, 0, 2), GaugeMask(())))
    spec = spectrum_of(mat)
    assert spec.real_values() == (
        pytest.approx(-20.0),
        pytest.approx(-8.0),
        pytest.approx(28.0),
    )
    assert len(spec) == 3
