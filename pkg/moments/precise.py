# moments/precise.py
"""
扩展精度矩量（mpmath），只供变分求解器使用。
单项幂基的 Gram 矩阵病态程度随基组指数增长，双精度下的约化会丢光有效数字；
这里的种子积分与递推都在 working_dps 位十进制精度下进行。
"""
from __future__ import annotations

import logging
import math
import threading
from contextlib import contextmanager
from functools import lru_cache
from typing import Iterator, Tuple

from mpmath import mp

import config
from models.params import ModelTag
from moments.quadrature import _coulomb_peak, _sextic_peak
from utility.errors import PrecisionError

logger = logging.getLogger("qes_spectra").getChild("moments")

# mpmath 的精度是全局状态；扫描在线程池中并发运行，所有扩展精度计算都串行进入
_MP_LOCK = threading.RLock()


def working_dps() -> int:
    return int(config.VARIATIONAL_CONFIG.get("working_dps", 64))


@contextmanager
def precise_context(dps: int = 0) -> Iterator:
    """持锁并切换到扩展精度，产出 mp 上下文。"""
    with _MP_LOCK:
        with mp.workdps(dps or working_dps()):
            yield mp


def _seed(model: ModelTag, m: float, b: float):
    """单个种子积分，区间在峰值处与尾部截断点处切开。"""
    if model is ModelTag.SEXTIC:
        peak = _sextic_peak(m, b)

        def f(x):
            return x ** m * mp.exp(b * x * x / 2 - x ** 4 / 2)

        far = max(peak * 2.0, 6.0) + 4.0
    else:
        peak = _coulomb_peak(m, b)

        def f(r):
            return r ** m * mp.exp(b * r - r * r)

        far = max(peak * 2.0, b + 8.0, 8.0) + 4.0

    nodes = [0, peak, far, mp.inf] if peak > 0 else [0, far, mp.inf]
    value, err = mp.quad(f, nodes, error=True, maxdegree=10)
    if model is ModelTag.SEXTIC:
        value, err = 2 * value, 2 * err
    if not value > 0 or err > value * mp.mpf(10) ** (-(mp.dps * 3 // 4)):
        raise PrecisionError(float(err / value) if value > 0 else math.inf)
    return value


@lru_cache(maxsize=128)
def _sextic(b: float, m_max: int, dps: int) -> Tuple:
    with precise_context(dps):
        bb = mp.mpf(b)
        values = [_seed(ModelTag.SEXTIC, 0, bb), _seed(ModelTag.SEXTIC, 2, bb)]
        for m in range(0, m_max - 3, 2):
            values.append(((m + 1) * values[-2] + bb * values[-1]) / 2)
        logger.debug(f"扩展精度振子矩量 b={b:g}, m_max={m_max}, dps={dps} 已生成")
        return tuple(values[:m_max // 2 + 1])


def precise_sextic_moments(b: float, m_max: int) -> Tuple:
    """μ_0, μ_2, ..., μ_{m_max}（mpf）。"""
    if m_max < 2 or m_max % 2:
        raise ValueError(f"m_max 必须是不小于 2 的偶数，收到 {m_max}。")
    return _sextic(float(b), int(m_max), working_dps())


@lru_cache(maxsize=128)
def _coulomb(m0: float, b: float, count: int, dps: int) -> Tuple:
    with precise_context(dps):
        bb = mp.mpf(b)
        start = mp.mpf(m0)
        values = [_seed(ModelTag.COULOMB, start, bb), _seed(ModelTag.COULOMB, start + 1, bb)]
        for k in range(count - 2):
            m = start + k
            values.append(((m + 1) * values[-2] + bb * values[-1]) / 2)
        logger.debug(f"扩展精度库仑矩量 m0={m0:g}, b={b:g}, count={count}, dps={dps} 已生成")
        return tuple(values[:count])


def precise_coulomb_moments(m0: float, b: float, count: int) -> Tuple:
    """ν_{m0}, ..., ν_{m0+count-1}（mpf）。"""
    if not m0 > -1:
        raise ValueError(f"m0 必须大于 -1，收到 {m0}。")
    if count < 2:
        raise ValueError(f"count 必须不小于 2，收到 {count}。")
    return _coulomb(float(m0), float(b), int(count), working_dps())


def clear_precise_cache() -> None:
    _sextic.cache_clear()
    _coulomb.cache_clear()
