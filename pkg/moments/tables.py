# moments/tables.py
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np

import config
from models.params import ModelTag
from moments.quadrature import coulomb_moment_seeds, quadrature_oracle, sextic_moment_seeds
from utility.errors import TableExtensionError

logger = logging.getLogger("qes_spectra").getChild("moments")

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class MomentTable:
    """
    加权幂矩量表，orders = start, start+step, ...。
    振子：μ_m（m 为偶数，step=2，start=0）；库仑：ν_m（step=1，start=m₀）。
    errors 是每一项的绝对误差估计；replaced 中的项不是递推值。
    """
    model: ModelTag
    b: float
    start: float
    step: int
    values: Tuple[float, ...]
    errors: Tuple[float, ...]
    # 递推误差过大、改用直接积分的项在表中的下标
    replaced: Tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.values) != len(self.errors) or not self.values:
            raise ValueError("矩量表的值与误差长度不一致或为空。")
        if not all(math.isfinite(v) and v > 0 for v in self.values):
            raise ValueError("矩量必须是有限正数。")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def orders(self) -> np.ndarray:
        return self.start + self.step * np.arange(len(self.values))

    @property
    def last_order(self) -> float:
        return self.start + self.step * (len(self.values) - 1)

    def index_of(self, m: float) -> int:
        k = (m - self.start) / self.step
        idx = int(round(k))
        if abs(k - idx) > 1e-9:
            raise ValueError(f"阶数 {m} 不在矩量表的网格上。")
        if idx < 0 or idx >= len(self.values):
            raise TableExtensionError(m, self.last_order)
        return idx

    def moment(self, m: float) -> float:
        return self.values[self.index_of(m)]

    def error(self, m: float) -> float:
        return self.errors[self.index_of(m)]

    def relative_errors(self) -> np.ndarray:
        return np.array(self.errors) / np.array(self.values)


# ===================================================================
# 分部积分递推 + 误差传播
# ===================================================================

def _recurse(
        model: ModelTag,
        b: float,
        orders: List[float],
        seeds: Tuple[float, float],
        seed_errors: Tuple[float, float],
) -> Tuple[List[float], List[float], List[int]]:
    """
    向上递推，表中第 k 项由第 k-2 与 k-1 项给出：
    振子 μ_{m+4} = ((m+1)μ_m + b μ_{m+2})/2，
    库仑 ν_{m+2} = ((m+1)ν_m + b ν_{m+1})/2。
    相对误差估计超过阈值的项改用积分对照。
    """
    recheck = config.MOMENT_CONFIG.get("recheck_rtol", 1e-12)
    values = list(seeds[:len(orders)])
    errors = list(seed_errors[:len(orders)])
    replaced: List[int] = []
    for k in range(2, len(orders)):
        m = orders[k - 2]
        t0 = (m + 1.0) * values[k - 2]
        t1 = b * values[k - 1]
        value = 0.5 * (t0 + t1)
        err = 0.5 * ((m + 1.0) * errors[k - 2] + abs(b) * errors[k - 1]) + _EPS * 0.5 * (abs(t0) + abs(t1))
        if not value > 0 or err > recheck * abs(value):
            oracle_value, oracle_err = quadrature_oracle(model, orders[k], b)
            logger.warning(
                f"矩量 m={orders[k]:g} (b={b:g}) 递推误差估计 {err / abs(value) if value else math.inf:.2e} 过大，"
                f"改用直接积分。"
            )
            value, err = oracle_value, oracle_err
            replaced.append(k)
        values.append(value)
        errors.append(err)
    return values, errors, replaced


@lru_cache(maxsize=256)
def _sextic_table(b: float, m_max: int) -> MomentTable:
    orders = [float(m) for m in range(0, m_max + 1, 2)]
    seeds, seed_errors = sextic_moment_seeds(b)
    # 表中相邻两项相差 2 阶；μ_{m+4} 由 μ_m（前两项）与 μ_{m+2}（前一项）给出
    values, errors, replaced = _recurse(ModelTag.SEXTIC, b, orders, seeds, seed_errors)
    logger.debug(f"振子矩量表 b={b:g}, m_max={m_max} 已生成")
    return MomentTable(ModelTag.SEXTIC, b, 0.0, 2, tuple(values), tuple(errors), tuple(replaced))


def sextic_moments(b: float, m_max: int) -> MomentTable:
    """μ_0, μ_2, ..., μ_{m_max}。"""
    if m_max < 0 or m_max % 2:
        raise ValueError(f"m_max 必须是非负偶数，收到 {m_max}。")
    return _sextic_table(float(b), int(m_max))


@lru_cache(maxsize=256)
def _coulomb_table(m0: float, b: float, count: int) -> MomentTable:
    orders = [m0 + k for k in range(count)]
    seeds, seed_errors = coulomb_moment_seeds(m0, b)
    # ν_{m+2} 由 ν_m（前两项）与 ν_{m+1}（前一项）给出
    values, errors, replaced = _recurse(ModelTag.COULOMB, b, orders, seeds, seed_errors)
    logger.debug(f"库仑矩量表 m0={m0:g}, b={b:g}, count={count} 已生成")
    return MomentTable(ModelTag.COULOMB, b, m0, 1, tuple(values), tuple(errors), tuple(replaced))


def coulomb_moments(m0: float, b: float, count: int) -> MomentTable:
    """ν_{m0}, ν_{m0+1}, ..., 共 count 项。"""
    if not m0 > -1:
        raise ValueError(f"m0 必须大于 -1，收到 {m0}。")
    if count < 1:
        raise ValueError(f"count 必须为正，收到 {count}。")
    return _coulomb_table(float(m0), float(b), int(count))


def clear_cache() -> None:
    _sextic_table.cache_clear()
    _coulomb_table.cache_clear()
