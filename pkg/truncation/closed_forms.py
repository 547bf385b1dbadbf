# truncation/closed_forms.py
"""
已发表的低阶显式解，用作三对角路线的独立对照。
"""
from __future__ import annotations

import math
from typing import Tuple

from numpy.polynomial import Polynomial


# ===================================================================
# 六次振子
# ===================================================================

def sextic_n0(s: int, b: float) -> Tuple[float, float]:
    """(a, E)。"""
    return 2 * s + 3 - b * b / 4.0, -b * (2 * s + 1) / 2.0


def sextic_n1(s: int, b: float) -> Tuple[float, Tuple[float, float], Tuple[float, float]]:
    """(a, (E_低, E_高), (c_1 低, c_1 高))。"""
    root = math.sqrt(b * b + 8.0 * (2 * s + 1))
    a = 2 * s + 7 - b * b / 4.0
    energies = (-(b * (2 * s + 3) + 2.0 * root) / 2.0, -(b * (2 * s + 3) - 2.0 * root) / 2.0)
    c1 = ((b + root) / (2.0 * (2 * s + 1)), (b - root) / (2.0 * (2 * s + 1)))
    return a, energies, c1


def sextic_n2_cubic(s: int, b: float) -> Polynomial:
    """n=2 时能量满足的三次方程（升幂系数）。"""
    c3 = 8.0
    c2 = 12.0 * b * (2 * s + 5)
    c1 = 2.0 * (b * b * (12 * s * s + 60 * s + 59) - 256.0 * (s + 1))
    c0 = b * (2 * s + 1) * (b * b * (2 * s + 5) * (2 * s + 9) - 256.0 * (s + 3))
    return Polynomial([c0, c1, c2, c3])


def sextic_n2_a(s: int, b: float) -> float:
    return 2 * s + 11 - b * b / 4.0


# ===================================================================
# 微扰库仑模型
# ===================================================================

def coulomb_n0(gamma: float, b: float) -> Tuple[float, float]:
    """(E, a)。"""
    return 2.0 * gamma + 3.0 - b * b / 4.0, -b * (gamma + 1.0)


def coulomb_n1(gamma: float, b: float) -> Tuple[float, Tuple[float, float], Tuple[float, float]]:
    """(E, (a 低, a 高), (c_1 低, c_1 高))；低根无节点，高根有一个节点。"""
    root = math.sqrt(b * b + 16.0 * (gamma + 1.0))
    energy = 2.0 * gamma + 5.0 - b * b / 4.0
    a_roots = (-(b * (2.0 * gamma + 3.0) + root) / 2.0, -(b * (2.0 * gamma + 3.0) - root) / 2.0)
    c1 = ((root + b) / (4.0 * (gamma + 1.0)), (b - root) / (4.0 * (gamma + 1.0)))
    return energy, a_roots, c1


def coulomb_n2_cubic(gamma: float, b: float) -> Polynomial:
    """n=2 时 a 满足的三次方程（升幂系数）。"""
    c3 = 1.0
    c2 = 3.0 * b * (gamma + 2.0)
    c1 = b * b * (3.0 * gamma ** 2 + 12.0 * gamma + 11.0) - 4.0 * (4.0 * gamma + 5.0)
    c0 = b * (gamma + 1.0) * (b * b * (gamma + 2.0) * (gamma + 3.0) - 4.0 * (4.0 * gamma + 9.0))
    return Polynomial([c0, c1, c2, c3])


def coulomb_n2_energy(gamma: float, b: float) -> float:
    return 2.0 * gamma + 7.0 - b * b / 4.0
