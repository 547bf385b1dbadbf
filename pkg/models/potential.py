# models/potential.py
from __future__ import annotations

import math
from typing import Optional, Union

import numpy as np

from models.params import ModelTag, WellClass
from utility.errors import BoundaryCaseError, PotentialDomainError


def potential(
        model: Union[ModelTag, str],
        a: float,
        b: float,
        point: float,
        gamma: Optional[float] = None,
) -> float:
    """
    逐点计算势能。
    sextic: V = -a x² - b x⁴ + x⁶
    coulomb: V = -a/r - b r + r²，给出 gamma 时再加上离心项 γ(γ+1)/r²。
    """
    tag = ModelTag(model)
    if tag is ModelTag.SEXTIC:
        x2 = point * point
        return -a * x2 - b * x2 * x2 + x2 * x2 * x2

    if point <= 0:
        raise PotentialDomainError(f"库仑模型要求 r > 0，收到 r={point}。")
    value = -a / point - b * point + point * point
    if gamma is not None:
        value += gamma * (gamma + 1.0) / (point * point)
    return value


def count_wells(a: float, b: float) -> int:
    """
    V(a,b,x) 在实轴上的局部极小值个数（解析计数）。
    临界点为 x=0 与 x=±√y，其中 y>0 是 3y² - 2by - a = 0 的根；
    在 x=±√y 处 V'' = 8(a + b y)，在 x=0 处 V'' = -2a。
    """
    if a == 0:
        raise BoundaryCaseError("a=0 时原点是退化临界点，无法计数势阱。")
    disc = b * b + 3.0 * a
    minima = 1 if a < 0 else 0
    if disc < 0:
        return minima
    if disc == 0 and b > 0:
        raise BoundaryCaseError(f"b²+3a=0 (a={a}, b={b}) 时出现拐点，无法计数势阱。")
    root = math.sqrt(disc)
    for y in {(b + root) / 3.0, (b - root) / 3.0}:
        if y > 0 and a + b * y > 0:
            minima += 2
    return minima


def classify_wells(a: float, b: float) -> WellClass:
    """
    4a+b² < 0 为单阱；a > 0 为双阱；a < 0 时外侧出现两个极小且 b²+3a > 0 才是三阱。
    """
    if 4.0 * a + b * b == 0:
        raise BoundaryCaseError(f"4a+b²=0 (a={a}, b={b}) 处于分类边界上。")
    if a == 0:
        raise BoundaryCaseError(f"a=0 且 4a+b²>0 (b={b}) 的情形没有定义分类。")
    minima = count_wells(a, b)
    return {1: WellClass.SINGLE_WELL, 2: WellClass.DOUBLE_WELL, 3: WellClass.TRIPLE_WELL}[minima]


def brute_force_minima(a: float, b: float, half_width: float = 4.0, points: int = 40001) -> int:
    """在均匀网格上数 V 的严格局部极小值（分类的独立对照）。"""
    x = np.linspace(-half_width, half_width, points)
    v = -a * x ** 2 - b * x ** 4 + x ** 6
    inner = (v[1:-1] < v[:-2]) & (v[1:-1] < v[2:])
    return int(np.count_nonzero(inner))
