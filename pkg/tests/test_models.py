# tests/test_models.py
import math

import pytest
from pydantic import ValidationError

from models import (
    CoulombParams,
    SexticParams,
    WellClass,
    brute_force_minima,
    classify_wells,
    coulomb_H_action,
    coulomb_coeffs,
    matched_next_coefficient,
    potential,
    sextic_H_action,
    sextic_coeffs,
)
from utility.errors import BoundaryCaseError, PotentialDomainError


# --- 递推系数 ---

def test_sextic_coefficient_examples():
    a0, b0 = sextic_coeffs(0, SexticParams(), 0.0)
    assert a0 == 0.0
    assert b0 == pytest.approx(-0.5)
    assert sextic_coeffs(0, SexticParams(a=3.0), 0.0)[1] == pytest.approx(-2.0)
    assert sextic_coeffs(1, SexticParams(a=0.0, b=2.0, s=1), 1.0)[0] == pytest.approx(-0.4)


def test_coulomb_coefficient_examples():
    assert coulomb_coeffs(0, CoulombParams(gamma=1.0, a=-2.0, b=1.0), 4.75)[0] == pytest.approx(0.0, abs=1e-15)
    assert coulomb_coeffs(0, CoulombParams(gamma=1.0), 3.0)[1] == pytest.approx(0.0, abs=1e-15)
    a2, b2 = coulomb_coeffs(2, CoulombParams(gamma=1.0), 0.0)
    assert a2 == 0.0
    assert b2 == pytest.approx(7.0 / 18.0)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        sextic_coeffs(-1, SexticParams(), 0.0)
    with pytest.raises(ValueError):
        coulomb_coeffs(-1, CoulombParams(gamma=1.0), 0.0)


@pytest.mark.parametrize("b", [-1.5, 0.0, 0.7, 2.0])
@pytest.mark.parametrize("s", [0, 1])
def test_coefficients_flip_with_b_and_energy(b, s):
    p, q = SexticParams(a=1.2, b=b, s=s), SexticParams(a=1.2, b=-b, s=s)
    for j in range(10):
        a_pos, b_pos = sextic_coeffs(j, p, 2.3)
        a_neg, b_neg = sextic_coeffs(j, q, -2.3)
        assert a_neg == pytest.approx(-a_pos, rel=1e-15, abs=1e-15)
        assert b_neg == b_pos


# --- H 作用 ---

def test_sextic_action_examples():
    assert sextic_H_action(0, SexticParams()).t_minus == 0.0
    ground = sextic_H_action(0, SexticParams(a=3.0, b=0.0))
    assert ground.t_plus == 0.0
    assert ground.t_zero == 0.0


def test_coulomb_ground_state_is_eigenfunction():
    action = coulomb_H_action(0, CoulombParams(gamma=1.0, a=0.0, b=0.0))
    assert action.offsets == (-2, -1, 0)
    assert action.coefficient(-1) == 0.0
    assert action.coefficient(0) == pytest.approx(5.0)


@pytest.mark.parametrize("a, b, s, energy", [
    (0.0, 0.0, 0, 1.0), (3.0, -1.0, 1, -2.5), (-4.0, 2.5, 0, 7.0), (11.0, 0.3, 1, 0.0),
])
def test_sextic_action_reproduces_recurrence(a, b, s, energy):
    p = SexticParams(a=a, b=b, s=s)
    c_prev, c = 0.0, 1.0
    for j in range(21):
        a_j, b_j = sextic_coeffs(j, p, energy)
        expected = a_j * c + b_j * c_prev
        got = matched_next_coefficient(lambda k: sextic_H_action(k, p), j, energy, c, c_prev)
        assert got == pytest.approx(expected, rel=1e-12, abs=1e-12 * (abs(c) + abs(c_prev)))
        c_prev, c = c, expected


@pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("b", [-1.0, 0.0, 1.0])
def test_coulomb_action_reproduces_recurrence(gamma, b):
    p = CoulombParams(gamma=gamma, a=0.8, b=b)
    energy = 6.1
    c_prev, c = 0.0, 1.0
    for j in range(11):
        a_j, b_j = coulomb_coeffs(j, p, energy)
        expected = a_j * c + b_j * c_prev
        got = matched_next_coefficient(lambda k: coulomb_H_action(k, p), j, energy, c, c_prev)
        assert got == pytest.approx(expected, rel=1e-12, abs=1e-12 * (abs(c) + abs(c_prev)))
        c_prev, c = c, expected


# --- 势能 ---

def test_potential_examples():
    assert potential("sextic", 0.0, 0.0, 2.0) == 64.0
    assert potential("sextic", 1.0, 1.0, 1.0) == -1.0
    assert potential("coulomb", 1.0, 1.0, 1.0) == -1.0
    assert potential("coulomb", 1.0, 1.0, 1.0, gamma=1.0) == 1.0


def test_potential_is_even_in_x():
    assert potential("sextic", 1.3, -0.4, -0.7) == potential("sextic", 1.3, -0.4, 0.7)


@pytest.mark.parametrize("r", [0.0, -1.0])
def test_coulomb_potential_domain(r):
    with pytest.raises(PotentialDomainError):
        potential("coulomb", 1.0, 1.0, r)


# --- 势阱分类 ---

@pytest.mark.parametrize("a, b, expected", [
    (-10.0, 1.0, WellClass.SINGLE_WELL),
    (3.0, 0.0, WellClass.DOUBLE_WELL),
    (-1.0, 4.0, WellClass.TRIPLE_WELL),
])
def test_classify_examples(a, b, expected):
    assert classify_wells(a, b) is expected


@pytest.mark.parametrize("a, b", [(-1.0, 2.0), (0.0, 1.0), (-3.0, 3.0)])
def test_classify_boundaries(a, b):
    with pytest.raises(BoundaryCaseError):
        classify_wells(a, b)


def test_classify_matches_brute_force(rng):
    checked = 0
    while checked < 100:
        a, b = rng.uniform(-8.0, 8.0), rng.uniform(-4.0, 4.0)
        if abs(4 * a + b * b) < 0.5 or abs(a) < 0.5 or abs(b * b + 3 * a) < 0.5:
            continue
        minima = {WellClass.SINGLE_WELL: 1, WellClass.DOUBLE_WELL: 2, WellClass.TRIPLE_WELL: 3}
        assert minima[classify_wells(a, b)] == brute_force_minima(a, b), (a, b)
        checked += 1


# --- 参数校验 ---

def test_sextic_params_validation():
    with pytest.raises(ValidationError):
        SexticParams(s=2)
    with pytest.raises(ValidationError):
        SexticParams(a=math.inf)
    with pytest.raises(ValidationError):
        SexticParams(b=math.nan)


def test_coulomb_params_validation():
    with pytest.raises(ValidationError):
        CoulombParams(gamma=0.0)
    with pytest.raises(ValidationError):
        CoulombParams(gamma=1.0, a=-math.inf)


def test_params_are_frozen():
    p = SexticParams(a=1.0)
    with pytest.raises(ValidationError):
        p.a = 2.0
