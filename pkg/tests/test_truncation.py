# tests/test_truncation.py
import math

import numpy as np
import pytest

from models.params import ModelTag
from truncation import (
    assemble_wavefunction,
    count_nodes,
    coulomb_points_for_window,
    coulomb_solution,
    full_line_nodes,
    label_state,
    residual_ratio,
    sextic_b_for_a,
    sextic_constraint,
    sextic_points_for_window,
    sextic_spectrum,
    state_nodes,
)
from truncation import closed_forms
from utility.errors import AmbiguousNodeError, RootIndexError

SQRT2 = math.sqrt(2)
SQRT12 = math.sqrt(12)


# --- 约束与谱 ---

def test_constraint_examples():
    assert sextic_constraint(0, 0, 0.0) == 3.0
    assert sextic_constraint(1, 0, 0.0) == 7.0
    assert sextic_constraint(0, 1, 2.0) == 4.0
    assert sextic_b_for_a(0, 0, 3.0) == (0.0,)
    assert sextic_b_for_a(0, 0, 4.0) == ()
    assert sextic_b_for_a(0, 0, 0.0) == pytest.approx((-SQRT12, SQRT12))


def test_sextic_spectrum_examples():
    ground = sextic_spectrum(0, 0, 0.0)
    assert ground.a == 3.0
    assert ground.energies == pytest.approx((0.0,), abs=1e-15)
    second = sextic_spectrum(2, 0, 0.0)
    assert second.a == 11.0
    np.testing.assert_allclose(second.energies, [-8.0, 0.0, 8.0], atol=1e-12)


def test_coulomb_solution_examples():
    ground = coulomb_solution(0, 1.0, 1.0)
    assert ground.energy == 4.75
    assert ground.a_roots == pytest.approx((-2.0,))
    first = coulomb_solution(1, 1.0, 1.0)
    np.testing.assert_allclose(first.a_roots, [-(5 + math.sqrt(33)) / 2, -(5 - math.sqrt(33)) / 2], rtol=1e-13)
    second = coulomb_solution(2, 1.0, 0.0)
    assert second.energy == 9.0
    np.testing.assert_allclose(second.a_roots, [-6.0, 0.0, 6.0], atol=1e-12)


def test_order_out_of_range():
    with pytest.raises(ValueError):
        sextic_spectrum(-1, 0, 0.0)
    with pytest.raises(ValueError):
        coulomb_solution(61, 1.0, 0.0)


@pytest.mark.parametrize("n", [0, 3, 8])
@pytest.mark.parametrize("s", [0, 1])
def test_energies_flip_with_b(n, s):
    pos = sextic_spectrum(n, s, 1.7).energies
    neg = sextic_spectrum(n, s, -1.7).energies
    np.testing.assert_allclose(neg, -np.array(pos[::-1]), atol=1e-10)


def test_roots_satisfy_recurrence_tail():
    for solution in (sextic_spectrum(6, 1, -0.9), coulomb_solution(6, 2.0, 1.5)):
        assert np.all(residual_ratio(solution) <= 1e-9)


# --- 低阶显式解 ---

def test_closed_forms_match_tridiagonal_route(rng):
    for _ in range(50):
        b = rng.uniform(-4.0, 4.0)
        s = int(rng.integers(0, 2))
        gamma = rng.uniform(0.2, 3.0)

        a0, e0 = closed_forms.sextic_n0(s, b)
        ground = sextic_spectrum(0, s, b)
        assert ground.a == pytest.approx(a0, rel=1e-14, abs=1e-14)
        assert ground.energies[0] == pytest.approx(e0, rel=1e-12, abs=1e-12)

        a1, e1, c1 = closed_forms.sextic_n1(s, b)
        first = sextic_spectrum(1, s, b)
        assert first.a == pytest.approx(a1, rel=1e-14, abs=1e-14)
        np.testing.assert_allclose(first.energies, e1, rtol=1e-10, atol=1e-10)
        for i in range(2):
            assert assemble_wavefunction(first, i).coefficients[1] == pytest.approx(c1[i], rel=1e-9, abs=1e-10)

        cubic = np.sort(closed_forms.sextic_n2_cubic(s, b).roots().real)
        np.testing.assert_allclose(sextic_spectrum(2, s, b).energies, cubic, rtol=1e-8, atol=1e-8)

        energy0, root0 = closed_forms.coulomb_n0(gamma, b)
        ground = coulomb_solution(0, gamma, b)
        assert ground.energy == pytest.approx(energy0)
        assert ground.a_roots[0] == pytest.approx(root0, rel=1e-12, abs=1e-12)

        energy1, roots1, cc1 = closed_forms.coulomb_n1(gamma, b)
        first = coulomb_solution(1, gamma, b)
        assert first.energy == pytest.approx(energy1)
        np.testing.assert_allclose(first.a_roots, roots1, rtol=1e-10, atol=1e-10)
        for i in range(2):
            assert assemble_wavefunction(first, i).coefficients[1] == pytest.approx(cc1[i], rel=1e-9, abs=1e-10)

        cubic = np.sort(closed_forms.coulomb_n2_cubic(gamma, b).roots().real)
        second = coulomb_solution(2, gamma, b)
        assert second.energy == pytest.approx(closed_forms.coulomb_n2_energy(gamma, b))
        np.testing.assert_allclose(second.a_roots, cubic, rtol=1e-8, atol=1e-8)


def test_printed_cubics_at_zero_b():
    np.testing.assert_allclose(np.sort(closed_forms.sextic_n2_cubic(0, 0.0).roots().real), [-8, 0, 8], atol=1e-12)
    np.testing.assert_allclose(np.sort(closed_forms.coulomb_n2_cubic(1.0, 0.0).roots().real), [-6, 0, 6],
                               atol=1e-12)
    assert closed_forms.sextic_n2_a(0, 0.0) == 11.0


# --- 波函数 ---

def test_ground_state_wavefunction():
    wave = assemble_wavefunction(sextic_spectrum(0, 0, 0.0), 0)
    assert wave.coefficients == (1.0,)
    assert wave.weight.model is ModelTag.SEXTIC
    assert wave.evaluate(np.array([1.0]))[0] == pytest.approx(math.exp(-0.25))


def test_first_order_wavefunctions():
    low = assemble_wavefunction(sextic_spectrum(1, 0, 0.0), 0)
    assert low.coefficients[1] == pytest.approx(SQRT2)
    assert low.root == pytest.approx(-2 * SQRT2)
    # P 以 x² 为变量
    assert low.evaluate(np.array([1.0]))[0] == pytest.approx((1 + SQRT2) * math.exp(-0.25))

    upper = assemble_wavefunction(coulomb_solution(1, 1.0, 0.0), 1)
    assert upper.coefficients[1] == pytest.approx(-SQRT2 / 2)
    assert upper.weight.prefactor_power == 2.0
    assert upper.weight.describe() == "r^2*exp(0*r/2 - r^2/2)"


def test_root_index_out_of_range():
    solution = sextic_spectrum(1, 0, 0.0)
    with pytest.raises(RootIndexError):
        assemble_wavefunction(solution, 2)
    with pytest.raises(RootIndexError):
        label_state(coulomb_solution(0, 1.0, 0.0), -1)


# --- 节点与标记 ---

def test_count_nodes_examples():
    assert count_nodes([1.0], ModelTag.SEXTIC) == 0
    assert count_nodes([1.0], ModelTag.SEXTIC, 1) == 1
    assert count_nodes([1.0, -1.0], ModelTag.SEXTIC, 1) == 2
    assert count_nodes([1.0, 2.0], ModelTag.COULOMB) == 0
    assert count_nodes([1.0, -3.0, 2.0], "coulomb") == 2
    assert full_line_nodes([1.0, -1.0], 1) == 3


def test_count_nodes_needs_unit_head():
    with pytest.raises(ValueError):
        count_nodes([2.0, 1.0], ModelTag.COULOMB)


def test_root_at_origin_is_ambiguous():
    with pytest.raises(AmbiguousNodeError):
        count_nodes([1.0, -1e9], ModelTag.COULOMB)


def test_label_examples():
    label = label_state(sextic_spectrum(2, 1, 0.5), 1)
    assert (label.i, label.sector, label.nodes, label.full_line_nodes, label.level) == (1, 1.0, 2, 3, 1)
    label = label_state(coulomb_solution(3, 1.0, 0.0), 2)
    assert (label.sector, label.nodes, label.level) == (1.0, 2, 2)


@pytest.mark.parametrize("n", [0, 2, 5])
@pytest.mark.parametrize("s", [0, 1])
def test_sextic_node_law(n, s):
    solution = sextic_spectrum(n, s, 1.0)
    for i in range(n + 1):
        assert state_nodes(solution, i) == (i + s, 2 * i + s)


@pytest.mark.parametrize("n", [0, 2, 5])
def test_coulomb_node_law(n):
    solution = coulomb_solution(n, 1.0, 0.5)
    for i in range(n + 1):
        assert state_nodes(solution, i) == (i, None)


# --- 扫描窗口 ---

def test_sextic_window_at_zero_a():
    points = sextic_points_for_window("b", 0.0, -6.0, 6.0, 12)
    values = np.array([p.value for p in points])
    assert np.all(np.abs(values) >= SQRT12 - 1e-12)
    assert np.any(np.isclose(values, SQRT12))
    assert np.any(np.isclose(values, -SQRT12))
    ground = [p for p in points if p.n == 0 and p.sector == 0.0 and p.value > 0]
    assert ground[0].energy == pytest.approx(-math.sqrt(3))


def test_sextic_window_along_a():
    points = sextic_points_for_window("a", 0.0, 0.0, 14.0, 12)
    assert {(p.n, p.sector) for p in points} == {(0, 0.0), (1, 0.0), (2, 0.0), (0, 1.0), (1, 1.0), (2, 1.0)}
    assert all(p.full_line_level == 2 * p.level + int(p.sector) for p in points)


def test_coulomb_window():
    points = coulomb_points_for_window(1.0, 1.0, -10.0, 10.0, 12)
    values = [p.value for p in points]
    for expected in (-2.0, -(5 + math.sqrt(33)) / 2, -(5 - math.sqrt(33)) / 2):
        assert any(math.isclose(v, expected, rel_tol=1e-12) for v in values)
    assert values == sorted(values)


def test_window_rejects_unknown_parameter():
    with pytest.raises(ValueError):
        sextic_points_for_window("c", 0.0, 0.0, 1.0, 2)
