# tests/test_variational.py
import math

import numpy as np
import pytest
from scipy.special import gamma as gamma_fn

from models.params import CoulombParams, SexticParams
from utility.errors import ConditioningError
from variational import (
    SolveStatus,
    VariationalResult,
    VariationalSpec,
    expectation,
    gram_matrix,
    hamiltonian_matrix,
    hellmann_feynman_check,
    level_energy,
    match_levels,
    merge_sectors,
    mixed_overlap,
    reduced_model,
    solve_fixed,
    solve_generalized,
    spectrum,
)

MU0 = 2 ** 0.25 * gamma_fn(0.25) / 2
MU2 = 2 ** 0.75 * gamma_fn(0.75) / 2


def _spec(params, basis_size=25, levels=1):
    return VariationalSpec(params=params, basis_size=basis_size, levels=levels)


def _stub_result(energies, vectors):
    n = len(vectors)
    return VariationalResult(
        energies=np.array(energies, dtype=float), coefficients=np.eye(n), vectors=np.array(vectors, dtype=float),
        convergence=tuple(0.0 for _ in energies), condition=1.0, basis_size=n,
    )


# --- 矩阵 ---

def test_gram_examples():
    np.testing.assert_allclose(gram_matrix(_spec(SexticParams(), 1)), [[MU0]], rtol=1e-13)
    s = gram_matrix(_spec(SexticParams(), 2))
    assert s[0, 1] == pytest.approx(MU2, rel=1e-13)
    assert s[1, 0] == s[0, 1]
    coulomb = gram_matrix(_spec(CoulombParams(gamma=1.0), 1))
    np.testing.assert_allclose(coulomb, [[3 * math.sqrt(math.pi) / 8]], rtol=1e-13)


def test_hamiltonian_of_exact_ground_state():
    np.testing.assert_allclose(hamiltonian_matrix(_spec(SexticParams(a=3.0), 1)), [[0.0]], atol=1e-14)


def test_hamiltonian_is_symmetric():
    h = hamiltonian_matrix(_spec(SexticParams(a=1.3, b=-0.6, s=1), 6))
    np.testing.assert_allclose(h, h.T, rtol=1e-12, atol=1e-12)


def test_level_count_cannot_exceed_basis_size():
    with pytest.raises(ValueError):
        _spec(SexticParams(), basis_size=3, levels=4)


# --- 广义本征问题 ---

def test_solve_generalized_diagonal():
    result = solve_generalized(np.diag([3.0, 1.0, 2.0]), np.eye(3), 2)
    np.testing.assert_allclose(result.energies, [1.0, 2.0])
    assert result.status is SolveStatus.OK


def test_solve_generalized_with_h_equal_s(rng):
    m = rng.normal(size=(6, 6))
    s = m @ m.T + 6 * np.eye(6)
    result = solve_generalized(s, s, 6)
    np.testing.assert_allclose(result.energies, np.ones(6), rtol=1e-10)
    c = result.coefficients
    np.testing.assert_allclose(c.T @ s @ c, np.eye(6), atol=1e-10)


def test_solve_generalized_rejects_singular_metric():
    s = np.array([[1.0, 1.0], [1.0, 1.0 + 1e-15]])
    with pytest.raises(ConditioningError):
        solve_generalized(np.eye(2), s, 1)


def test_solve_generalized_argument_checks():
    with pytest.raises(ValueError):
        solve_generalized(np.eye(2), np.eye(3), 1)
    with pytest.raises(ValueError):
        solve_generalized(np.eye(2), np.eye(2), 3)


# --- 变分谱 ---

def test_spectrum_examples():
    assert spectrum(_spec(SexticParams(a=0.0, b=3.0))).energy(0) < 0
    second = spectrum(_spec(SexticParams(a=11.0), levels=3))
    np.testing.assert_allclose(second.energies, [-8.0, 0.0, 8.0], atol=1e-8)
    assert second.converged
    coulomb = spectrum(_spec(CoulombParams(gamma=1.0, a=-2.0, b=1.0)))
    assert coulomb.energy(0) == pytest.approx(4.75, abs=1e-8)


@pytest.mark.parametrize("params, level, exact", [
    (SexticParams(a=3.0), 0, 0.0),
    (SexticParams(a=7.0), 0, -2 * math.sqrt(2)),
    (SexticParams(a=7.0), 1, 2 * math.sqrt(2)),
    (SexticParams(a=4.75, b=1.0, s=1), 0, -1.5),
    (CoulombParams(gamma=1.0, a=-2 * math.sqrt(2)), 0, 7.0),
    (CoulombParams(gamma=1.0, a=2 * math.sqrt(2)), 1, 7.0),
])
def test_truncation_states_are_reproduced(params, level, exact):
    result = spectrum(_spec(params, levels=level + 1))
    assert result.energy(level) == pytest.approx(exact, abs=1e-8)


def test_energies_decrease_with_basis_size():
    params = SexticParams(a=1.0, b=1.5)
    previous = None
    for n in range(5, 26, 5):
        energies = solve_fixed(_spec(params, basis_size=n, levels=3)).energies
        if previous is not None:
            assert np.all(energies <= previous + 1e-10)
        previous = energies


def test_coefficients_are_gram_orthonormal():
    spec = _spec(SexticParams(a=2.0, b=0.5), basis_size=5, levels=3)
    result = solve_fixed(spec)
    c = result.coefficients
    s = gram_matrix(spec)
    np.testing.assert_allclose(c.T @ s @ c, np.eye(3), atol=1e-8)


def test_converged_levels_keep_their_own_status():
    result = spectrum(_spec(SexticParams(a=0.0, b=0.0), levels=8))
    assert result.convergence[0] < 1e-9
    assert result.status_of(0) is SolveStatus.OK
    for nu in range(result.levels):
        assert result.level_converged(nu) == (result.convergence[nu] < 1e-9)
    if not all(result.level_converged(nu) for nu in range(result.levels)):
        assert result.status is not SolveStatus.OK


def test_status_of_falls_back_to_result_status():
    result = _stub_result([1.0, 2.0], np.eye(2))
    assert result.status_of(1) is SolveStatus.OK
    with pytest.raises(IndexError):
        result.status_of(2)


def test_sectors_do_not_share_levels():
    even = spectrum(_spec(SexticParams(a=1.0, b=1.0, s=0), levels=4))
    odd = spectrum(_spec(SexticParams(a=1.0, b=1.0, s=1), levels=4))
    gaps = np.abs(even.energies[:, None] - odd.energies[None, :])
    assert gaps.min() > 1e-6


# --- 观测量 ---

def test_expectation_of_exact_ground_state():
    result = spectrum(_spec(SexticParams(a=3.0)))
    assert expectation(result, 0, "x2") == pytest.approx(MU2 / MU0, rel=1e-8)
    assert expectation(result, 0, "x2") == pytest.approx(0.47799, abs=1e-5)
    with pytest.raises(ValueError):
        expectation(result, 0, "r")


def test_hellmann_feynman_in_a():
    check = hellmann_feynman_check(_spec(SexticParams(a=3.0), levels=2), 0, "a")
    assert check.passed
    assert check.fd_slope == pytest.approx(-MU2 / MU0, rel=1e-5)


def test_finite_difference_error_scales_with_step_squared():
    check = hellmann_feynman_check(_spec(SexticParams(a=1.0, b=0.5), levels=2), 0, "a", delta=0.05)
    large, small = check.raw_defects
    assert large / small == pytest.approx(4.0, rel=0.1)


@pytest.mark.slow
@pytest.mark.parametrize("params, nu, parameter", [
    (SexticParams(a=3.0), 0, "b"),
    (SexticParams(a=1.0, b=-1.0, s=1), 1, "a"),
    (CoulombParams(gamma=1.0, a=-2.0, b=1.0), 0, "a"),
    (CoulombParams(gamma=1.0, a=-2.0, b=1.0), 0, "b"),
])
def test_hellmann_feynman_gaps(params, nu, parameter):
    check = hellmann_feynman_check(_spec(params, levels=nu + 1), nu, parameter)
    assert check.gap <= 1e-5


# --- 能级编号与追踪 ---

def test_full_line_levels_alternate_parity():
    params = SexticParams(a=11.0)
    assert level_energy(params, 0, full_line=True) == pytest.approx(-8.0, abs=1e-8)
    assert level_energy(params, 2, full_line=True) == pytest.approx(0.0, abs=1e-8)
    odd_ground = level_energy(SexticParams(a=11.0, s=1), 0)
    assert level_energy(params, 1, full_line=True) == odd_ground


def test_level_energy_rejects_negative_index():
    with pytest.raises(ValueError):
        level_energy(SexticParams(), -1)


def test_merge_sectors():
    even = _stub_result([-1.0, 2.0], np.eye(2))
    odd = _stub_result([0.5, 3.0], np.eye(2))
    assert merge_sectors(even, odd) == [(-1.0, 0, 0), (0.5, 1, 0), (2.0, 0, 1), (3.0, 1, 1)]


def test_match_levels_identity():
    result = spectrum(_spec(SexticParams(a=2.0, b=1.0), levels=4))
    order, weights = match_levels(result, result)
    assert order == (0, 1, 2, 3)
    np.testing.assert_allclose(weights, 1.0, rtol=1e-10)


def test_match_levels_follows_swapped_vectors():
    previous = _stub_result([0.0, 1.0], np.eye(2))
    current = _stub_result([0.0, 1.0], [[0.0, 1.0], [1.0, 0.0]])
    order, _ = match_levels(previous, current)
    assert order == (1, 0)


def test_match_levels_across_b_step():
    first = spectrum(_spec(SexticParams(a=2.0, b=1.0), levels=3))
    second = spectrum(_spec(SexticParams(a=2.0, b=1.01), levels=3))
    order, weights = match_levels(first, second)
    assert order == (0, 1, 2)
    assert min(weights) > 0.99


def test_mixed_overlap_of_same_model_is_identity():
    reduced = reduced_model(SexticParams(b=0.5), 25)
    np.testing.assert_array_equal(mixed_overlap(reduced, reduced, 4), np.eye(4))
    other = reduced_model(SexticParams(b=0.5, s=1), 25)
    with pytest.raises(ValueError):
        mixed_overlap(reduced, other, 4)
