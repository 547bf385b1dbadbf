# truncation/solutions.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from models.params import ModelTag
from ttrr.recurrence import CoefficientSequence


@dataclass(frozen=True)
class TruncationSolutionSextic:
    """阶数 n、宇称 s 下，曲线 a_{n,s}(b) 上的 n+1 个精确能级。"""
    n: int
    s: int
    b: float
    a: float
    energies: Tuple[float, ...]
    coefficients: Tuple[CoefficientSequence, ...]

    @property
    def model(self) -> ModelTag:
        return ModelTag.SEXTIC

    @property
    def roots(self) -> Tuple[float, ...]:
        return self.energies

    @property
    def sector(self) -> float:
        return float(self.s)


@dataclass(frozen=True)
class TruncationSolutionCoulomb:
    """阶数 n 下的单一能量 E 与 n+1 个使其成立的 a 值。"""
    n: int
    gamma: float
    b: float
    energy: float
    a_roots: Tuple[float, ...]
    coefficients: Tuple[CoefficientSequence, ...]

    @property
    def model(self) -> ModelTag:
        return ModelTag.COULOMB

    @property
    def roots(self) -> Tuple[float, ...]:
        return self.a_roots

    @property
    def sector(self) -> float:
        return self.gamma


@dataclass(frozen=True)
class WeightDescriptor:
    """
    振子: x^s · exp(b x²/4 - x⁴/4)
    库仑: r^{γ+1} · exp(b r/2 - r²/2)
    """
    model: ModelTag
    prefactor_power: float
    b: float

    def describe(self) -> str:
        if self.model is ModelTag.SEXTIC:
            return f"x^{self.prefactor_power:g}*exp({self.b:g}*x^2/4 - x^4/4)"
        return f"r^{self.prefactor_power:g}*exp({self.b:g}*r/2 - r^2/2)"

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        x = np.asarray(points, dtype=float)
        if self.model is ModelTag.SEXTIC:
            return x ** self.prefactor_power * np.exp(self.b * x ** 2 / 4.0 - x ** 4 / 4.0)
        return x ** self.prefactor_power * np.exp(self.b * x / 2.0 - x ** 2 / 2.0)


@dataclass(frozen=True)
class Wavefunction:
    """ψ = P · 权重；振子的 P 以 x² 为变量。"""
    coefficients: Tuple[float, ...]
    weight: WeightDescriptor
    root: Optional[float] = None

    def polynomial(self) -> Polynomial:
        return Polynomial(np.array(self.coefficients, dtype=float))

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        x = np.asarray(points, dtype=float)
        variable = x ** 2 if self.weight.model is ModelTag.SEXTIC else x
        return self.polynomial()(variable) * self.weight.evaluate(x)


@dataclass(frozen=True)
class StateLabel:
    """
    振子：(i, s)，半轴节点数 i+s，全直线节点数 2i+s，属于宇称 s 扇区的第 i 个能级。
    库仑：根序号 i（从 0 开始）落在第 i 条曲线 E_{i,γ}(a,b) 上，有 i 个节点。
    """
    model: ModelTag
    i: int
    sector: float
    nodes: int
    full_line_nodes: int
    level: int


@dataclass(frozen=True)
class TruncationPoint:
    """扫描窗口内的一个截断点（蓝点）。"""
    model: ModelTag
    n: int
    sector: float
    param: str
    value: float
    energy: float
    root_index: int
    level: int
    full_line_level: int
