# variational/observables.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

import config
from models.params import SexticParams
from utility.errors import LevelCrossingError
from variational.basis import Observable, VariationalSpec
from variational.solver import VariationalResult, match_levels, solve_fixed

logger = logging.getLogger("qes_spectra").getChild("variational")


def _observable(value: Union[Observable, str]) -> Observable:
    return value if isinstance(value, Observable) else Observable(value)


def expectation(result: VariationalResult, nu: int, observable: Union[Observable, str]) -> float:
    """⟨ψ_ν|O|ψ_ν⟩，矩阵元来自移位后的矩量；正交化基中 ⟨ψ|ψ⟩ = 1。"""
    if result.reduced is None:
        raise ValueError("该结果不带约化模型，无法计算期望值。")
    if not 0 <= nu < result.levels:
        raise IndexError(f"能级 {nu} 不在结果中（共 {result.levels} 个）。")
    matrix = result.reduced.observable(_observable(observable), result.basis_size)
    y = result.vectors[:, nu]
    return float(y @ matrix @ y / (y @ y))


def coupling_for(params, parameter: str) -> Observable:
    """∂H/∂a 与 ∂H/∂b 分别是 -x² / -x⁴（振子）或 -1/r / -r（库仑）。"""
    if parameter not in ("a", "b"):
        raise ValueError(f"参数必须是 'a' 或 'b'，收到 {parameter!r}。")
    if isinstance(params, SexticParams):
        return Observable.X2 if parameter == "a" else Observable.X4
    return Observable.INV_R if parameter == "a" else Observable.R


@dataclass(frozen=True)
class HellmannFeynmanCheck:
    parameter: str
    level: int
    delta: float
    fd_slope: float
    expected: float
    gap: float
    # 未外推的中心差分在 δ 与 δ/2 处相对 expected 的偏差
    raw_defects: tuple

    @property
    def passed(self) -> bool:
        return self.gap <= config.HF_CONFIG.get("gap_tol", 1e-5)


def _shifted(spec: VariationalSpec, parameter: str, step: float) -> VariationalSpec:
    value = getattr(spec.params, parameter) + step
    return spec.model_copy(update={"params": spec.params.model_copy(update={parameter: value})})


def _shifted_energy(spec: VariationalSpec, centre: VariationalResult, nu: int, parameter: str, step: float) -> float:
    result = solve_fixed(_shifted(spec, parameter, step))
    order, weights = match_levels(centre, result)
    if order[nu] != nu:
        raise LevelCrossingError(
            f"{parameter} 移动 {step:+g} 后能级 {nu} 与能级 {order[nu]} 交换（重叠 {weights[nu]:.3f}）。"
        )
    return result.energy(nu)


def hellmann_feynman_check(spec: VariationalSpec, nu: int, parameter: str,
                           delta: Optional[float] = None) -> HellmannFeynmanCheck:
    """
    中心差分 dE_ν/d(parameter) 与 -⟨∂V⟩ 的比较。差分在 δ 与 δ/2 处各做一次并做 Richardson 外推。
    能级在 ±δ 处按重叠追踪；顺序改变时抛出 LevelCrossingError。
    a 不进入基函数，固定基组中关系严格成立；基函数的权重随 b 变化，
    b 方向的差分与 -⟨∂V/∂b⟩ 之差正比于基组截断误差，只对已收敛的能级有意义。
    """
    delta = delta or config.HF_CONFIG.get("delta", 1e-4)
    if nu >= spec.levels:
        spec = spec.model_copy(update={"levels": nu + 1})
    observable = coupling_for(spec.params, parameter)
    centre = solve_fixed(spec)
    expected = -expectation(centre, nu, observable)

    slopes = []
    for step in (delta, delta / 2):
        upper = _shifted_energy(spec, centre, nu, parameter, step)
        lower = _shifted_energy(spec, centre, nu, parameter, -step)
        slopes.append((upper - lower) / (2 * step))
    fd_slope = (4 * slopes[1] - slopes[0]) / 3
    gap = abs(fd_slope - expected)
    logger.debug(f"HF {parameter} ν={nu}: 差分 {fd_slope:.10g}，-⟨{observable.value}⟩ = {expected:.10g}，差 {gap:.2e}")
    return HellmannFeynmanCheck(
        parameter=parameter, level=nu, delta=delta, fd_slope=float(fd_slope), expected=expected,
        gap=float(gap), raw_defects=tuple(float(abs(s - expected)) for s in slopes),
    )
