# ttrr/recurrence.py
from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Tuple

import numpy as np

import config
from utility.errors import RecurrenceOverflowError

logger = logging.getLogger("qes_spectra").getChild("ttrr")


class RecurrenceModel(ABC):
    """
    三项递推 c_{j+1} = A_j c_j + B_j c_{j-1} 的系数提供者。

    A_j 是谱参数 λ 的仿射函数：A_j = slope_j · λ + intercept_j，
    B_j 不依赖 λ（库仑模型中能量 E 作为已知常数进入 B_j）。
    """

    # 谱参数标记：振子为 'E'，库仑模型为 'a'
    spectral_parameter: str = "E"

    @abstractmethod
    def a_affine(self, j: int, params: Any) -> Tuple[float, float]:
        """返回 (slope_j, intercept_j)。"""
        raise NotImplementedError(f"{self.__class__.__name__} 必须实现 a_affine 方法。")

    @abstractmethod
    def b_coefficient(self, j: int, params: Any) -> float:
        raise NotImplementedError(f"{self.__class__.__name__} 必须实现 b_coefficient 方法。")

    def coefficients(self, j: int, params: Any, lam: float) -> Tuple[float, float]:
        """在给定 λ 下返回 (A_j, B_j)。"""
        slope, intercept = self.a_affine(j, params)
        return slope * lam + intercept, self.b_coefficient(j, params)


class NegatedRecurrence(RecurrenceModel):
    """把 A_j 换成 -A_j 的递推，其解正是交错序列 (-1)^j c_j。"""

    def __init__(self, model: RecurrenceModel):
        self.model = model
        self.spectral_parameter = model.spectral_parameter

    def a_affine(self, j: int, params: Any) -> Tuple[float, float]:
        slope, intercept = self.model.a_affine(j, params)
        return -slope, -intercept

    def b_coefficient(self, j: int, params: Any) -> float:
        return self.model.b_coefficient(j, params)


def negated_model(model: RecurrenceModel) -> RecurrenceModel:
    return NegatedRecurrence(model)


@dataclass(frozen=True)
class CoefficientSequence:
    """
    系数序列 c_0..c_m，约定 c_{-1}=0, c_0=1。
    真实值为 values[j] * exp(log_scales[j])；未发生重标度时 log_scales 全为 0。
    只有比值与零检验在重标度后仍有意义。
    """
    values: Tuple[float, ...]
    log_scales: Tuple[float, ...]

    def __post_init__(self):
        if not self.values or self.values[0] != 1.0 or self.log_scales[0] != 0.0:
            raise ValueError("系数序列必须以 c_0 = 1 开头。")
        if len(self.values) != len(self.log_scales):
            raise ValueError("values 与 log_scales 长度不一致。")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def order(self) -> int:
        """m，即最后一个系数的下标。"""
        return len(self.values) - 1

    @property
    def rescaled(self) -> bool:
        return any(s != 0.0 for s in self.log_scales)

    def as_array(self) -> np.ndarray:
        """真实系数；发生过重标度时可能溢出为 inf。"""
        return np.array(self.values) * np.exp(np.array(self.log_scales))

    def log_abs(self) -> np.ndarray:
        """log|c_j|，零系数给出 -inf。"""
        with np.errstate(divide="ignore"):
            return np.log(np.abs(np.array(self.values))) + np.array(self.log_scales)

    def relative_tail(self) -> float:
        """|c_m| / max_j |c_j|，在对数域中计算。"""
        logs = self.log_abs()
        if not np.isfinite(logs[-1]):
            return 0.0
        return float(np.exp(logs[-1] - np.max(logs)))

    def head(self, count: int) -> np.ndarray:
        """前 count 个真实系数（多项式因子使用）。"""
        return self.as_array()[:count]


def generate_coefficients(model: RecurrenceModel, params: Any, lam: float, m: int) -> CoefficientSequence:
    """前向迭代递推，得到 c_0..c_m。"""
    if m < 0:
        raise ValueError(f"m 必须非负，收到 {m}。")
    threshold = config.RECURRENCE_CONFIG.get("rescale_threshold", 1e150)

    values = [1.0]
    log_scales = [0.0]
    prev, cur, log_scale = 0.0, 1.0, 0.0
    for j in range(m):
        a_j, b_j = model.coefficients(j, params, lam)
        nxt = a_j * cur + b_j * prev
        if not math.isfinite(nxt):
            raise RecurrenceOverflowError(j + 1)
        prev, cur = cur, nxt
        if abs(cur) > threshold:
            # 重标度工作对，并记录累计的对数尺度
            scale = max(abs(cur), 1.0)
            prev /= scale
            cur /= scale
            log_scale += math.log(scale)
            logger.debug(f"递推在 j={j + 1} 处重标度，累计对数尺度 {log_scale:.3f}")
        values.append(cur)
        log_scales.append(log_scale)
    return CoefficientSequence(values=tuple(values), log_scales=tuple(log_scales))


def alternating_transform(c: CoefficientSequence) -> CoefficientSequence:
    """ĉ_j = (-1)^j c_j。"""
    flipped = tuple(v if j % 2 == 0 else -v for j, v in enumerate(c.values))
    return CoefficientSequence(values=flipped, log_scales=c.log_scales)
