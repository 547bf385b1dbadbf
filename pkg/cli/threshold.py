# cli/threshold.py
from __future__ import annotations

import logging
import math
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

import config
from cli.records import ThresholdResult
from models.params import CoulombParams, ModelTag, SexticParams
from utility.errors import BracketError
from variational.basis import Params
from variational.solver import level_energy

logger = logging.getLogger("qes_spectra").getChild("threshold")


def _params(model: ModelTag, fixed: Dict[str, float], param: str, value: float, s: int) -> Params:
    values = dict(fixed)
    values[param] = float(value)
    if model is ModelTag.SEXTIC:
        return SexticParams(a=values.get("a", 0.0), b=values.get("b", 0.0), s=s)
    return CoulombParams(gamma=values["gamma"], a=values.get("a", 0.0), b=values.get("b", 0.0))


def known_bracket(model: ModelTag, fixed: Dict[str, float], param: str, level: int,
                  full_line: bool) -> Optional[Tuple[float, float]]:
    """已发表过零点的预设区间（只适用于振子的全直线能级编号）。"""
    if model is not ModelTag.SEXTIC or not full_line:
        return None
    for entry in config.THRESHOLDS:
        if entry["sweep"] != param or entry["level"] != level:
            continue
        if all(math.isclose(fixed.get(k, 0.0), v, abs_tol=1e-12) for k, v in entry["fixed"].items()):
            return tuple(entry["bracket"])
    return None


def scan_bracket(energy, param: str) -> Tuple[float, float]:
    """按配置的粗网格找第一个变号区间。"""
    lo, hi, step = config.THRESHOLD_CONFIG.get("scan_ranges", {}).get(param, (-10.0, 20.0, 0.5))
    grid = np.arange(lo, hi + 0.5 * step, step)
    previous_x, previous_e = None, None
    for x in grid:
        e = energy(float(x))
        if e == 0:
            return float(x), float(x)
        if previous_e is not None and np.sign(e) != np.sign(previous_e):
            return previous_x, float(x)
        previous_x, previous_e = float(x), e
    raise BracketError(f"在 {param} ∈ [{lo:g}, {hi:g}] 的粗扫中能级没有变号。")


def find_threshold(
        model: ModelTag,
        fixed: Dict[str, float],
        param: str,
        level: int,
        s: int = 0,
        full_line: bool = False,
        bracket: Optional[Tuple[float, float]] = None,
        basis_size: Optional[int] = None,
) -> ThresholdResult:
    """
    E_level(param) = 0 的根。能级取固定 N 的变分值（对参数光滑），用 brentq 求根。
    未给出区间时先查预设，再做粗扫。
    """
    if param not in ("a", "b"):
        raise ValueError(f"只能扫描 a 或 b，收到 {param!r}。")
    if model is not ModelTag.SEXTIC:
        full_line = False

    def energy(x: float) -> float:
        return level_energy(_params(model, fixed, param, x, s), level, basis_size, full_line)

    bracket = bracket or known_bracket(model, fixed, param, level, full_line) or scan_bracket(energy, param)
    lo, hi = bracket
    if lo == hi:
        root = lo
    else:
        e_lo, e_hi = energy(lo), energy(hi)
        if e_lo == 0:
            root = lo
        elif e_hi == 0:
            root = hi
        elif np.sign(e_lo) == np.sign(e_hi):
            raise BracketError(f"区间 [{lo:g}, {hi:g}] 两端能级同号：E={e_lo:.6g}, {e_hi:.6g}。")
        else:
            root = brentq(energy, lo, hi, xtol=config.THRESHOLD_CONFIG.get("xtol", 1e-10), rtol=4 * np.finfo(float).eps)

    residual = abs(energy(root))
    if residual > config.THRESHOLD_CONFIG.get("residual_tol", 1e-8):
        logger.warning(f"过零点 {param}={root:.12g} 处残差 {residual:.3e} 超过容差")
    logger.info(f"{model.value} 能级 {level} 在 {param}={root:.10f} 处过零（区间 [{lo:g}, {hi:g}]）")
    sector = None if full_line else (float(s) if model is ModelTag.SEXTIC else fixed.get("gamma"))
    return ThresholdResult(
        model=model.value, param=param, level=level, sector=sector, full_line=full_line,
        fixed=dict(fixed), bracket=(float(lo), float(hi)), root=float(root), residual=float(residual),
    )
