# models/sextic.py
from __future__ import annotations

from typing import Tuple

from models.action import BasisAction
from models.params import SexticParams
from ttrr.recurrence import RecurrenceModel


def _denominator(j: int, s: int) -> float:
    return 4.0 * (j + 1) * (2 * j + 2 * s + 1)


def sextic_a_affine(j: int, p: SexticParams) -> Tuple[float, float]:
    """A_j = slope·E + intercept。"""
    den = _denominator(j, p.s)
    return -2.0 / den, -p.b * (4 * j + 2 * p.s + 1) / den


def sextic_b_coefficient(j: int, p: SexticParams) -> float:
    return -(4.0 * p.a + p.b ** 2 - 4.0 * (4 * j + 2 * p.s - 1)) / (2.0 * _denominator(j, p.s))


def sextic_coeffs(j: int, p: SexticParams, energy: float) -> Tuple[float, float]:
    """(A_j, B_j)。"""
    if j < 0:
        raise ValueError(f"下标 j 必须非负，收到 {j}。")
    slope, intercept = sextic_a_affine(j, p)
    return slope * energy + intercept, sextic_b_coefficient(j, p)


def sextic_H_action(j: int, p: SexticParams) -> BasisAction:
    """
    基函数 φ_j = x^{s+2j} exp(b x²/4 - x⁴/4)：
    H φ_j = t_minus φ_{j-1} + t_zero φ_j + t_plus φ_{j+1}。
    """
    k = p.s + 2 * j
    t_minus = -float(k * (k - 1))
    t_zero = -0.5 * p.b * (4 * j + 2 * p.s + 1)
    t_plus = 4 * j + 2 * p.s + 3 - p.a - p.b ** 2 / 4.0
    return BasisAction(offsets=(-1, 0, 1), coefficients=(t_minus, t_zero, t_plus))


class SexticRecurrence(RecurrenceModel):
    """六次振子的递推，谱参数为能量 E。"""
    spectral_parameter = "E"

    def a_affine(self, j: int, params: SexticParams) -> Tuple[float, float]:
        return sextic_a_affine(j, params)

    def b_coefficient(self, j: int, params: SexticParams) -> float:
        return sextic_b_coefficient(j, params)
