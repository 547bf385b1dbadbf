# models/coulomb.py
from __future__ import annotations

from typing import Tuple

from models.action import BasisAction
from models.params import CoulombParams
from ttrr.recurrence import RecurrenceModel


def _denominator(j: int, gamma: float) -> float:
    return (j + 1) * (j + 2.0 * (gamma + 1.0))


def coulomb_a_affine(j: int, p: CoulombParams) -> Tuple[float, float]:
    """A_j 作为 a 的仿射函数：slope·a + intercept。"""
    den = _denominator(j, p.gamma)
    return -1.0 / den, -p.b * (j + p.gamma + 1.0) / den


def coulomb_b_coefficient(j: int, p: CoulombParams, energy: float) -> float:
    return -(p.b ** 2 + 4.0 * (energy - 2 * j - 2.0 * p.gamma - 1.0)) / (4.0 * _denominator(j, p.gamma))


def coulomb_coeffs(j: int, p: CoulombParams, energy: float) -> Tuple[float, float]:
    """(A_j, B_j)，A_j 使用 p.a。"""
    if j < 0:
        raise ValueError(f"下标 j 必须非负，收到 {j}。")
    slope, intercept = coulomb_a_affine(j, p)
    return slope * p.a + intercept, coulomb_b_coefficient(j, p, energy)


def coulomb_H_action(j: int, p: CoulombParams) -> BasisAction:
    """
    基函数 φ_j = r^{γ+1+j} exp(b r/2 - r²/2)。r² 与 r 项和势能抵消后：
    H φ_j = -j(j+2γ+1) φ_{j-2} - (a + b(j+γ+1)) φ_{j-1} + (2γ+2j+3 - b²/4) φ_j。
    """
    t_minus2 = -j * (j + 2.0 * p.gamma + 1.0)
    t_minus1 = -(p.a + p.b * (j + p.gamma + 1.0))
    t_zero = 2.0 * p.gamma + 2 * j + 3.0 - p.b ** 2 / 4.0
    return BasisAction(offsets=(-2, -1, 0), coefficients=(t_minus2, t_minus1, t_zero))


class CoulombRecurrence(RecurrenceModel):
    """库仑模型的递推，谱参数为 a，能量 E 固定（截断条件给出）。"""
    spectral_parameter = "a"

    def __init__(self, energy: float):
        self.energy = energy

    def a_affine(self, j: int, params: CoulombParams) -> Tuple[float, float]:
        return coulomb_a_affine(j, params)

    def b_coefficient(self, j: int, params: CoulombParams) -> float:
        return coulomb_b_coefficient(j, params, self.energy)
