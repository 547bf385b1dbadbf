# tests/test_moments.py
import math

import numpy as np
import pytest
from scipy.special import gamma as gamma_fn

import config
from cli.commands import moment_rows
from models.params import ModelTag
from moments import (
    clear_cache,
    coulomb_moment_seeds,
    coulomb_moments,
    precise_coulomb_moments,
    precise_sextic_moments,
    quadrature_oracle,
    sextic_moment_seeds,
    sextic_moments,
)
from utility.errors import TableExtensionError

MU0 = 2 ** 0.25 * gamma_fn(0.25) / 2
MU2 = 2 ** 0.75 * gamma_fn(0.75) / 2


def test_sextic_seeds_at_zero_b():
    (mu0, mu2), (err0, err2) = sextic_moment_seeds(0.0)
    assert mu0 == pytest.approx(MU0, rel=1e-12)
    assert mu2 == pytest.approx(MU2, rel=1e-12)
    assert mu0 == pytest.approx(2.155802, rel=1e-6)
    assert err0 < 1e-11 * mu0
    assert err2 < 1e-11 * mu2


@pytest.mark.parametrize("m0", [0.0, 1.0, 2.0, 5.0])
def test_coulomb_seeds_at_zero_b(m0):
    (nu0, nu1), _ = coulomb_moment_seeds(m0, 0.0)
    assert nu0 == pytest.approx(gamma_fn((m0 + 1) / 2) / 2, rel=1e-12)
    assert nu1 == pytest.approx(gamma_fn((m0 + 2) / 2) / 2, rel=1e-12)


def test_sextic_recursion_examples():
    table = sextic_moments(0.0, 6)
    assert table.moment(4) == pytest.approx(MU0 / 2, rel=1e-13)
    assert table.moment(6) == pytest.approx(3 * MU2 / 2, rel=1e-13)
    np.testing.assert_array_equal(table.orders, [0, 2, 4, 6])


def test_coulomb_recursion_examples():
    table = coulomb_moments(0.0, 0.0, 5)
    root_pi = math.sqrt(math.pi)
    expected = [root_pi / 2, 0.5, root_pi / 4, 0.5, 3 * root_pi / 8]
    np.testing.assert_allclose(table.values, expected, rtol=1e-13)
    assert coulomb_moments(2.0, 0.0, 3).moment(4.0) == pytest.approx(3 * root_pi / 8, rel=1e-13)


@pytest.mark.slow
@pytest.mark.parametrize("b", [-2.0, -1.0, 0.0, 1.0, 2.0])
def test_sextic_table_matches_quadrature(b):
    table = sextic_moments(b, 60)
    for m in table.orders:
        value, _ = quadrature_oracle(ModelTag.SEXTIC, float(m), b)
        assert table.moment(m) == pytest.approx(value, rel=1e-9), m


@pytest.mark.slow
@pytest.mark.parametrize("gamma", [0.5, 1.0, 2.5])
@pytest.mark.parametrize("b", [-1.0, 0.0, 1.0])
def test_coulomb_table_matches_quadrature(gamma, b):
    table = coulomb_moments(2 * gamma, b, 40)
    for m in table.orders:
        value, _ = quadrature_oracle(ModelTag.COULOMB, float(m), b)
        assert table.moment(m) == pytest.approx(value, rel=1e-9), m


@pytest.mark.parametrize("b", [-3.0, 0.0, 2.5])
def test_moments_are_positive_and_log_convex(b):
    mu = np.array(sextic_moments(b, 40).values)
    assert np.all(mu > 0)
    assert np.all(mu[1:-1] ** 2 <= mu[:-2] * mu[2:] * (1 + 1e-12))
    nu = np.array(coulomb_moments(2.0, b, 30).values)
    assert np.all(nu > 0)
    assert np.all(nu[1:-1] ** 2 <= nu[:-2] * nu[2:] * (1 + 1e-12))


def test_error_estimates_are_small():
    table = sextic_moments(1.0, 30)
    assert np.all(table.relative_errors() < 1e-11)


def test_reading_past_the_table_fails():
    table = sextic_moments(0.0, 10)
    with pytest.raises(TableExtensionError) as info:
        table.moment(12)
    assert info.value.requested == 12
    with pytest.raises(ValueError):
        table.moment(3)


@pytest.mark.parametrize("m_max", [-2, 3])
def test_sextic_order_validation(m_max):
    with pytest.raises(ValueError):
        sextic_moments(0.0, m_max)


def test_coulomb_table_validation():
    with pytest.raises(ValueError):
        coulomb_moments(-1.0, 0.0, 3)
    with pytest.raises(ValueError):
        coulomb_moments(1.0, 0.0, 0)


@pytest.mark.parametrize("b", [-1.5, 0.0, 2.0])
def test_precise_moments_match_double_table(b):
    precise = [float(v) for v in precise_sextic_moments(b, 20)]
    np.testing.assert_allclose(precise, sextic_moments(b, 20).values, rtol=1e-11)


def test_precise_coulomb_closed_form():
    values = precise_coulomb_moments(2.0, 0.0, 3)
    assert len(values) == 3
    assert float(values[2]) == pytest.approx(3 * math.sqrt(math.pi) / 8, rel=1e-15)


@pytest.fixture
def strict_recheck(monkeypatch):
    """递推误差阈值设为 0：第三项起全部改用直接积分。"""
    clear_cache()
    monkeypatch.setitem(config.MOMENT_CONFIG, "recheck_rtol", 0.0)
    yield
    clear_cache()


def test_replaced_entries_are_recorded(strict_recheck):
    table = sextic_moments(0.7, 10)
    assert table.replaced == (2, 3, 4, 5)
    for k in table.replaced:
        value, _ = quadrature_oracle(ModelTag.SEXTIC, float(table.orders[k]), 0.7)
        assert table.values[k] == value
    coulomb = coulomb_moments(1.0, -0.4, 4)
    assert coulomb.replaced == (2, 3)


def test_moment_rows_mark_replaced_entries(strict_recheck):
    rows = moment_rows(ModelTag.COULOMB, -0.4, 5, gamma=1.0)
    assert [r.status for r in rows] == ["ok", "ok", "quadrature", "quadrature"]
