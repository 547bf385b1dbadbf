# moments/quadrature.py
from __future__ import annotations

import logging
import math
import warnings
from typing import Callable, Tuple, Union

import numpy as np
from scipy.integrate import IntegrationWarning, quad

import config
from models.params import ModelTag
from utility.errors import PrecisionError

logger = logging.getLogger("qes_spectra").getChild("moments")

# 积分被截断时允许丢弃的对数尾部（e^-45 ≈ 3e-20，远低于 1e-16 的相对要求）
_TAIL_LOG_DROP = 45.0


# ===================================================================
# 对数尺度的被积函数
# ===================================================================

def _sextic_log_weight(m: float, b: float) -> Callable[[float], float]:
    """log(x^m exp(b x²/2 - x⁴/2))。"""

    def g(x: float) -> float:
        if x <= 0:
            return 0.0 if m == 0 else -math.inf
        x2 = x * x
        return m * math.log(x) + 0.5 * b * x2 - 0.5 * x2 * x2

    return g


def _coulomb_log_weight(m: float, b: float) -> Callable[[float], float]:
    """log(r^m exp(b r - r²))。"""

    def g(r: float) -> float:
        if r <= 0:
            return 0.0 if m == 0 else -math.inf
        return m * math.log(r) + b * r - r * r

    return g


def _sextic_peak(m: float, b: float) -> float:
    # 2x⁴ - b x² - m = 0 的正根
    return math.sqrt(max((b + math.sqrt(b * b + 8.0 * m)) / 4.0, 0.0))


def _coulomb_peak(m: float, b: float) -> float:
    # 2r² - b r - m = 0 的正根
    return max((b + math.sqrt(b * b + 8.0 * m)) / 4.0, 0.0)


def _weight_parts(model: ModelTag, m: float, b: float) -> Tuple[Callable[[float], float], float, float]:
    """返回 (log 被积函数, 峰位置, 用于缩放的对数峰值)。"""
    if model is ModelTag.SEXTIC:
        g, peak = _sextic_log_weight(m, b), _sextic_peak(m, b)
    else:
        g, peak = _coulomb_log_weight(m, b), _coulomb_peak(m, b)
    shift = max(g(max(peak, 0.5)), g(0.0) if m == 0 else -math.inf)
    return g, peak, shift


def _tail_cutoff(g: Callable[[float], float], shift: float, start: float, step: float = 0.5) -> float:
    """从 start 开始外推，直到被积函数相对峰值低于 e^-45。"""
    cutoff = start
    while g(cutoff) - shift > -_TAIL_LOG_DROP:
        cutoff += step
    return cutoff


def _quad(func: Callable[[float], float], lo: float, hi: float, rtol: float) -> Tuple[float, float]:
    with warnings.catch_warnings():
        # 舍入警告只说明已到机器精度，是否达标由 abserr 判断
        warnings.simplefilter("ignore", IntegrationWarning)
        value, abserr = quad(func, lo, hi, epsabs=0.0, epsrel=rtol, limit=200)
    return value, abserr


# ===================================================================
# 种子积分（生产路径）：有限区间 + 分面板 + 补偿求和
# ===================================================================

def _panel_integral(model: ModelTag, m: float, b: float, min_cutoff: float) -> Tuple[float, float]:
    rtol = config.MOMENT_CONFIG.get("quadrature_rtol", 1e-13)
    fail_rtol = config.MOMENT_CONFIG.get("quadrature_fail_rtol", 1e-11)
    panels = config.MOMENT_CONFIG.get("panels", 8)

    g, peak, shift = _weight_parts(model, m, b)
    cutoff = _tail_cutoff(g, shift, max(min_cutoff, 2.0 * peak))

    def scaled(x: float) -> float:
        return math.exp(g(x) - shift)

    edges = np.linspace(0.0, cutoff, panels + 1)
    pieces, errors = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        value, abserr = _quad(scaled, float(lo), float(hi), rtol)
        pieces.append(value)
        errors.append(abserr)
    partial = math.fsum(pieces)
    abserr = math.fsum(errors)
    if not partial > 0 or abserr > fail_rtol * partial:
        raise PrecisionError(abserr / partial if partial > 0 else math.inf)

    scale = math.exp(shift)
    return partial * scale, abserr * scale


def sextic_moment_seeds(b: float) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """
    μ_0 与 μ_2，μ_m = ∫_{-∞}^{∞} x^m exp(b x²/2 - x⁴/2) dx。
    返回 ((μ_0, μ_2), (err_0, err_2))，利用偶性在 [0, X] 上积分后乘 2。
    """
    min_cutoff = max(config.MOMENT_CONFIG.get("oscillator_min_cutoff", 6.0), (2.0 * 40.0) ** 0.25 * 2.0)
    mu0, err0 = _panel_integral(ModelTag.SEXTIC, 0.0, b, min_cutoff)
    mu2, err2 = _panel_integral(ModelTag.SEXTIC, 2.0, b, min_cutoff)
    return (2.0 * mu0, 2.0 * mu2), (2.0 * err0, 2.0 * err2)


def coulomb_moment_seeds(m0: float, b: float) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """ν_{m0} 与 ν_{m0+1}，ν_m = ∫_0^∞ r^m exp(b r - r²) dr。"""
    if not m0 > -1:
        raise ValueError(f"m0 必须大于 -1，收到 {m0}。")
    min_cutoff = max(config.MOMENT_CONFIG.get("coulomb_min_cutoff", 8.0), b + 8.0)
    nu0, err0 = _panel_integral(ModelTag.COULOMB, m0, b, min_cutoff)
    nu1, err1 = _panel_integral(ModelTag.COULOMB, m0 + 1.0, b, min_cutoff)
    return (nu0, nu1), (err0, err1)


# ===================================================================
# 独立的积分对照：在峰处切开，右半段直接积到无穷
# ===================================================================

def quadrature_oracle(model: Union[ModelTag, str], m: float, b: float) -> Tuple[float, float]:
    """直接计算 μ_m 或 ν_m，返回 (值, 绝对误差估计)。"""
    tag = ModelTag(model)
    if tag is ModelTag.COULOMB and not m > -1:
        raise ValueError(f"库仑矩量要求 m > -1，收到 {m}。")
    rtol = config.MOMENT_CONFIG.get("quadrature_rtol", 1e-13)
    fail_rtol = config.MOMENT_CONFIG.get("quadrature_fail_rtol", 1e-11)

    g, peak, shift = _weight_parts(tag, m, b)

    def scaled(x: float) -> float:
        return math.exp(g(x) - shift)

    left, left_err = _quad(scaled, 0.0, peak, rtol) if peak > 0 else (0.0, 0.0)
    right, right_err = _quad(scaled, peak, math.inf, rtol)
    value = left + right
    abserr = left_err + right_err
    if not value > 0 or abserr > fail_rtol * value:
        raise PrecisionError(abserr / value if value > 0 else math.inf)

    factor = math.exp(shift) * (2.0 if tag is ModelTag.SEXTIC else 1.0)
    return value * factor, abserr * factor
