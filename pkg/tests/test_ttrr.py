# tests/test_ttrr.py
import math

import numpy as np
import pytest

from models.coulomb import CoulombRecurrence
from models.params import CoulombParams, SexticParams
from models.sextic import SexticRecurrence
from ttrr import (
    CoefficientSequence,
    RecurrenceModel,
    SymTridiag,
    TridiagonalSystem,
    alternating_transform,
    eig_sym_tridiag,
    generate_coefficients,
    negated_model,
    polynomial_roots,
    symmetrize,
    to_tridiagonal,
)
from utility.errors import ModelContractError, RecurrenceOverflowError, SymmetrizationError

SQRT8 = 2 * math.sqrt(2)


def _sequence(*values):
    return CoefficientSequence(values=tuple(values), log_scales=(0.0,) * len(values))


def _roots(model, params, n):
    return eig_sym_tridiag(symmetrize(to_tridiagonal(model, params, n)))


# --- generate_coefficients ---

def test_sextic_ground_state_first_coefficient_vanishes():
    seq = generate_coefficients(SexticRecurrence(), SexticParams(a=0.0, b=0.0), 0.0, 1)
    assert seq.values == (1.0, 0.0)


def test_sextic_first_order_solution_truncates():
    seq = generate_coefficients(SexticRecurrence(), SexticParams(a=7.0, b=0.0), -SQRT8, 2)
    assert seq.values[1] == pytest.approx(math.sqrt(2))
    assert seq.values[2] == pytest.approx(0.0, abs=1e-14)


def test_coulomb_first_order_solution_truncates():
    seq = generate_coefficients(CoulombRecurrence(7.0), CoulombParams(gamma=1.0, b=0.0), -SQRT8, 2)
    assert seq.values[2] == pytest.approx(0.0, abs=1e-14)


def test_overflow_names_index():
    with pytest.raises(RecurrenceOverflowError) as info:
        generate_coefficients(SexticRecurrence(), SexticParams(), math.inf, 3)
    assert info.value.index == 1


def test_large_coefficients_are_rescaled():
    seq = generate_coefficients(SexticRecurrence(), SexticParams(), 1e8, 60)
    assert seq.rescaled
    assert np.all(np.isfinite(seq.values))
    assert np.all(np.isfinite(seq.log_abs()))
    assert 0.0 < seq.relative_tail() <= 1.0


def test_negative_count_rejected():
    with pytest.raises(ValueError):
        generate_coefficients(SexticRecurrence(), SexticParams(), 0.0, -1)


def test_sequence_requires_unit_head():
    with pytest.raises(ValueError):
        _sequence(2.0, 1.0)


# --- alternating transform ---

def test_alternating_transform_examples():
    assert alternating_transform(_sequence(1.0, 2.0, 3.0)).values == (1.0, -2.0, 3.0)
    assert alternating_transform(_sequence(1.0)).values == (1.0,)
    seq = _sequence(1.0, -0.5, 0.25, 4.0)
    assert alternating_transform(alternating_transform(seq)) == seq


@pytest.mark.parametrize("model, params, lam", [
    (SexticRecurrence(), SexticParams(a=1.5, b=-0.7, s=1), 0.9),
    (CoulombRecurrence(4.2), CoulombParams(gamma=0.5, a=0.0, b=1.3), -1.1),
])
def test_negated_recurrence_gives_alternating_sequence(model, params, lam):
    direct = generate_coefficients(model, params, lam, 12)
    negated = generate_coefficients(negated_model(model), params, lam, 12)
    np.testing.assert_allclose(negated.values, alternating_transform(direct).values, rtol=1e-15, atol=0)


# --- Appendix-A reduction ---

def test_single_row_system():
    system = to_tridiagonal(SexticRecurrence(), SexticParams(a=3.0, b=0.0), 0)
    assert system.diagonal == (0.0,)
    assert system.parameter == "E"
    np.testing.assert_array_equal(eig_sym_tridiag(symmetrize(system)), [0.0])


def test_sextic_first_order_roots():
    np.testing.assert_allclose(_roots(SexticRecurrence(), SexticParams(a=7.0, b=0.0), 1), [-SQRT8, SQRT8],
                               rtol=1e-13)


def test_sextic_second_order_roots():
    np.testing.assert_allclose(_roots(SexticRecurrence(), SexticParams(a=11.0, b=0.0), 2), [-8.0, 0.0, 8.0],
                               atol=1e-12)


def test_coulomb_roots_are_strength_values():
    params = CoulombParams(gamma=1.0, b=0.0)
    system = to_tridiagonal(CoulombRecurrence(7.0), params, 1)
    assert system.parameter == "a"
    np.testing.assert_allclose(eig_sym_tridiag(symmetrize(system)), [-SQRT8, SQRT8], rtol=1e-13)
    np.testing.assert_allclose(_roots(CoulombRecurrence(9.0), params, 2), [-6.0, 0.0, 6.0], atol=1e-12)


def test_dense_matrix_has_same_spectrum():
    system = to_tridiagonal(SexticRecurrence(), SexticParams(a=(4 * 17 - 1.0) / 4, b=1.0, s=1), 3)
    dense = np.sort(np.linalg.eigvals(system.to_dense()).real)
    np.testing.assert_allclose(eig_sym_tridiag(symmetrize(system)), dense, atol=1e-10)


class _FlatModel(RecurrenceModel):
    def a_affine(self, j, params):
        return 0.0, 1.0

    def b_coefficient(self, j, params):
        return 1.0


def test_zero_slope_is_contract_error():
    with pytest.raises(ModelContractError):
        to_tridiagonal(_FlatModel(), None, 2)


def test_symmetrize_rejects_wrong_sign():
    system = TridiagonalSystem(lower=(1.0,), diagonal=(0.0, 0.0), upper=(-1.0,), parameter="E")
    with pytest.raises(SymmetrizationError) as info:
        symmetrize(system)
    assert info.value.index == 1


def test_off_manifold_parameters_cannot_symmetrize():
    # a 远小于截断值时 B_1 变号
    with pytest.raises(SymmetrizationError):
        symmetrize(to_tridiagonal(SexticRecurrence(), SexticParams(a=-5.0, b=0.0), 1))


# --- eigensolver ---

def test_eig_examples():
    np.testing.assert_array_equal(eig_sym_tridiag(SymTridiag((0.0,), ())), [0.0])
    np.testing.assert_allclose(eig_sym_tridiag(SymTridiag((0.0, 0.0), (SQRT8,))), [-SQRT8, SQRT8], rtol=1e-14)


def test_diagonal_matrix_returns_sorted_diagonal():
    np.testing.assert_array_equal(eig_sym_tridiag(SymTridiag((3.0, 1.0, 2.0), (0.0, 0.0))), [1.0, 2.0, 3.0])


def test_interlacing_of_leading_submatrix():
    t = symmetrize(to_tridiagonal(SexticRecurrence(), SexticParams(a=(4 * 27 - 1.7 ** 2) / 4, b=1.7), 6))
    full = eig_sym_tridiag(t)
    inner = eig_sym_tridiag(t.leading(6))
    assert np.all(full[:-1] <= inner + 1e-12)
    assert np.all(inner <= full[1:] + 1e-12)


@pytest.mark.parametrize("n", range(11))
def test_tridiagonal_route_matches_polynomial_roots(n):
    b = 0.8
    params = SexticParams(a=(4 * (4 * n + 3) - b * b) / 4, b=b)
    roots = _roots(SexticRecurrence(), params, n)
    oracle = polynomial_roots(SexticRecurrence(), params, n)
    np.testing.assert_allclose(roots, oracle, rtol=1e-9, atol=1e-9)


def test_forward_recurrence_vanishes_at_every_root():
    b, s, n = 1.3, 1, 4
    params = SexticParams(a=(4 * (4 * n + 2 * s + 3) - b * b) / 4, b=b, s=s)
    for lam in _roots(SexticRecurrence(), params, n):
        seq = generate_coefficients(SexticRecurrence(), params, float(lam), n + 1)
        assert seq.relative_tail() <= 1e-9
