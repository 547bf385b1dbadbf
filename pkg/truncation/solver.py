# truncation/solver.py
from __future__ import annotations

import logging
import math
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np

import config
from models.coulomb import CoulombRecurrence
from models.params import CoulombParams, ModelTag, SexticParams
from models.sextic import SexticRecurrence
from truncation.nodes import count_nodes, full_line_nodes
from truncation.solutions import (
    StateLabel,
    TruncationPoint,
    TruncationSolutionCoulomb,
    TruncationSolutionSextic,
    Wavefunction,
    WeightDescriptor,
)
from ttrr.recurrence import CoefficientSequence, RecurrenceModel, generate_coefficients
from ttrr.tridiagonal import eig_sym_tridiag, symmetrize, to_tridiagonal
from utility.errors import RootIndexError

logger = logging.getLogger("qes_spectra").getChild("truncation")

Solution = Union[TruncationSolutionSextic, TruncationSolutionCoulomb]


def _check_order(n: int):
    max_order = config.TRUNCATION_CONFIG.get("max_order", 60)
    if not 0 <= n <= max_order:
        raise ValueError(f"截断阶数 n 必须在 0..{max_order} 之间，收到 {n}。")


def _roots_and_coefficients(model: RecurrenceModel, params, n: int) -> Tuple[Tuple[float, ...], Tuple[CoefficientSequence, ...]]:
    system = to_tridiagonal(model, params, n)
    roots = eig_sym_tridiag(symmetrize(system))
    # c_0..c_{n+1}；最后一项在根处应为零
    sequences = tuple(generate_coefficients(model, params, float(lam), n + 1) for lam in roots)
    return tuple(float(r) for r in roots), sequences


# ===================================================================
# 六次振子
# ===================================================================

def sextic_constraint(n: int, s: int, b: float) -> float:
    """4a + b² = 4(4n+2s+3)。"""
    return (4.0 * (4 * n + 2 * s + 3) - b * b) / 4.0


def sextic_b_for_a(n: int, s: int, a: float) -> Tuple[float, ...]:
    """给定 a 反解 b；无实解时返回空元组，重根时只返回一个 0。"""
    radicand = 4.0 * (4 * n + 2 * s + 3) - 4.0 * a
    if radicand < 0:
        return ()
    if radicand == 0:
        return (0.0,)
    root = math.sqrt(radicand)
    return (-root, root)


def sextic_spectrum(n: int, s: int, b: float) -> TruncationSolutionSextic:
    _check_order(n)
    params = SexticParams(a=sextic_constraint(n, s, b), b=b, s=s)
    energies, sequences = _roots_and_coefficients(SexticRecurrence(), params, n)
    return TruncationSolutionSextic(n=n, s=s, b=b, a=params.a, energies=energies, coefficients=sequences)


# ===================================================================
# 微扰库仑模型
# ===================================================================

def coulomb_energy(n: int, gamma: float, b: float) -> float:
    return 2.0 * gamma + 2 * n + 3.0 - b * b / 4.0


def coulomb_solution(n: int, gamma: float, b: float) -> TruncationSolutionCoulomb:
    _check_order(n)
    energy = coulomb_energy(n, gamma, b)
    # a 是谱参数，这里的取值不参与计算
    params = CoulombParams(gamma=gamma, a=0.0, b=b)
    a_roots, sequences = _roots_and_coefficients(CoulombRecurrence(energy), params, n)
    return TruncationSolutionCoulomb(n=n, gamma=gamma, b=b, energy=energy, a_roots=a_roots, coefficients=sequences)


# ===================================================================
# 波函数、节点与标记
# ===================================================================

def _check_index(solution: Solution, i: int):
    if not 0 <= i < len(solution.roots):
        raise RootIndexError(f"根序号 {i} 超出范围 0..{len(solution.roots) - 1}。")


def assemble_wavefunction(solution: Solution, i: int) -> Wavefunction:
    _check_index(solution, i)
    coefficients = tuple(float(c) for c in solution.coefficients[i].head(solution.n + 1))
    if solution.model is ModelTag.SEXTIC:
        weight = WeightDescriptor(ModelTag.SEXTIC, float(solution.s), solution.b)
    else:
        weight = WeightDescriptor(ModelTag.COULOMB, solution.gamma + 1.0, solution.b)
    return Wavefunction(coefficients=coefficients, weight=weight, root=solution.roots[i])


def label_state(solution: Solution, i: int) -> StateLabel:
    """
    振子第 i 个能量：(i, s)，宇称扇区内的第 i 个能级。
    库仑第 i 个 a 根（升序）：由于 E 随 a 递减，落在第 i 条曲线上。
    """
    _check_index(solution, i)
    if solution.model is ModelTag.SEXTIC:
        return StateLabel(
            model=ModelTag.SEXTIC, i=i, sector=float(solution.s),
            nodes=i + solution.s, full_line_nodes=2 * i + solution.s, level=i,
        )
    return StateLabel(model=ModelTag.COULOMB, i=i, sector=solution.gamma, nodes=i, full_line_nodes=i, level=i)


def state_nodes(solution: Solution, i: int) -> Tuple[int, Optional[int]]:
    """由多项式实际数出的 (节点数, 全直线节点数)；库仑模型第二项为 None。"""
    wave = assemble_wavefunction(solution, i)
    if solution.model is ModelTag.SEXTIC:
        return (
            count_nodes(wave.coefficients, ModelTag.SEXTIC, solution.s),
            full_line_nodes(wave.coefficients, solution.s),
        )
    return count_nodes(wave.coefficients, ModelTag.COULOMB), None


# ===================================================================
# 扫描窗口内的截断点
# ===================================================================

def _inside(value: float, lo: float, hi: float) -> bool:
    tol = 1e-12 * (1.0 + abs(lo) + abs(hi))
    return lo - tol <= value <= hi + tol


def sextic_points_for_window(
        sweep: str,
        fixed: float,
        lo: float,
        hi: float,
        max_order: int,
        sectors: Iterable[int] = (0, 1),
) -> List[TruncationPoint]:
    """
    sweep='a' 时固定 b，截断点 a = a_{n,s}(b)；
    sweep='b' 时固定 a，截断点 b = ±√(4(4n+2s+3) - 4a)。
    """
    points = []
    for s in sectors:
        for n in range(max_order + 1):
            if sweep == "a":
                candidates = [(sextic_constraint(n, s, fixed), fixed)]
            elif sweep == "b":
                candidates = [(fixed, b) for b in sextic_b_for_a(n, s, fixed)]
            else:
                raise ValueError(f"未知的扫描参数 {sweep}。")
            for a, b in candidates:
                value = a if sweep == "a" else b
                if not _inside(value, lo, hi):
                    continue
                solution = sextic_spectrum(n, s, b)
                for i, energy in enumerate(solution.energies):
                    points.append(TruncationPoint(
                        model=ModelTag.SEXTIC, n=n, sector=float(s), param=sweep, value=value,
                        energy=energy, root_index=i, level=i, full_line_level=2 * i + s,
                    ))
    points.sort(key=lambda p: (p.value, p.energy))
    logger.debug(f"振子窗口 [{lo:g}, {hi:g}] 内共有 {len(points)} 个截断点")
    return points


def coulomb_points_for_window(
        gamma: float,
        b: float,
        lo: float,
        hi: float,
        max_order: int,
) -> List[TruncationPoint]:
    """固定 γ、b 扫描 a 时，所有落在窗口内的 a 根。"""
    points = []
    for n in range(max_order + 1):
        solution = coulomb_solution(n, gamma, b)
        for i, a in enumerate(solution.a_roots):
            if _inside(a, lo, hi):
                points.append(TruncationPoint(
                    model=ModelTag.COULOMB, n=n, sector=gamma, param="a", value=a,
                    energy=solution.energy, root_index=i, level=i, full_line_level=i,
                ))
    points.sort(key=lambda p: (p.value, p.energy))
    logger.debug(f"库仑窗口 [{lo:g}, {hi:g}] 内共有 {len(points)} 个截断点")
    return points


def residual_ratio(solution: Solution) -> np.ndarray:
    """每个根处的 |c_{n+1}| / max_j |c_j|。"""
    return np.array([seq.relative_tail() for seq in solution.coefficients])
