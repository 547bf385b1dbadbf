# cli/sweep.py
from __future__ import annotations

import asyncio
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import config
from cli.records import Provenance, SweepRecord
from models.params import CoulombParams, ModelTag, SexticParams
from truncation.solutions import TruncationPoint
from truncation.solver import coulomb_points_for_window, sextic_points_for_window
from utility.errors import ConditioningError, QesError
from utility.helpers import create_progress_bar, format_duration_hms
from variational.basis import Params, VariationalSpec
from variational.solver import VariationalResult, level_energy, match_levels, spectrum

logger = logging.getLogger("qes_spectra").getChild("sweep")


@dataclass(frozen=True)
class SweepPlan:
    """一次扫描的全部输入。fixed 中给出不扫描的参数（振子 a 或 b；库仑 gamma 与 a 或 b）。"""
    model: ModelTag
    param: str
    grid: Tuple[float, ...]
    fixed: Dict[str, float] = field(default_factory=dict)
    levels: int = 8
    sectors: Tuple[int, ...] = (0, 1)
    full_line: bool = False
    basis_size: Optional[int] = None
    max_order: int = 12

    def params_at(self, value: float, s: int = 0) -> Params:
        values = dict(self.fixed)
        values[self.param] = float(value)
        if self.model is ModelTag.SEXTIC:
            return SexticParams(a=values.get("a", 0.0), b=values.get("b", 0.0), s=s)
        return CoulombParams(gamma=values["gamma"], a=values.get("a", 0.0), b=values.get("b", 0.0))

    @property
    def sector_params(self) -> Tuple[int, ...]:
        return self.sectors if self.model is ModelTag.SEXTIC else (0,)

    @property
    def window(self) -> Tuple[float, float]:
        return min(self.grid), max(self.grid)


@dataclass
class SweepOutcome:
    records: List[SweepRecord]
    warnings: int = 0
    overlay_defects: List[Tuple[TruncationPoint, float]] = field(default_factory=list)


# ===================================================================
# 单个网格点（在线程池中执行）
# ===================================================================

def _solve_point(plan: SweepPlan, value: float) -> Dict[int, object]:
    """每个扇区一个 VariationalResult；条件数失败时放入异常对象本身。"""
    out: Dict[int, object] = {}
    for s in plan.sector_params:
        params = plan.params_at(value, s)
        size = plan.basis_size or config.VARIATIONAL_CONFIG.get("basis_size", 25)
        try:
            out[s] = spectrum(VariationalSpec(params=params, basis_size=size, levels=min(plan.levels, size)))
        except QesError as e:
            logger.error(f"{plan.param}={value:g} 扇区 {s}: {e}")
            out[s] = e
    return out


async def _solve_grid(plan: SweepPlan, jobs: int) -> List[Dict[int, object]]:
    semaphore = asyncio.Semaphore(max(1, jobs))
    done = 0
    started = time.monotonic()
    total = len(plan.grid)

    async def worker(value: float):
        nonlocal done
        async with semaphore:
            result = await asyncio.to_thread(_solve_point, plan, value)
        done += 1
        if done % max(1, total // 10) == 0 or done == total:
            logger.info(f"扫描进度 {create_progress_bar(done, total)} ({done}/{total})")
        return result

    results = await asyncio.gather(*(worker(v) for v in plan.grid))
    logger.info(f"{total} 个网格点完成，用时 {format_duration_hms(time.monotonic() - started)}")
    return list(results)


# ===================================================================
# 记录组装
# ===================================================================

def _track(plan: SweepPlan, solved: Sequence[Dict[int, object]]) -> int:
    """按重叠检查相邻网格点的能级对应关系，返回不一致的次数。"""
    mismatches = 0
    for s in plan.sector_params:
        previous: Optional[VariationalResult] = None
        for value, point in zip(plan.grid, solved):
            current = point[s]
            if not isinstance(current, VariationalResult):
                previous = None
                continue
            if previous is not None and previous.levels == current.levels:
                order, weights = match_levels(previous, current)
                if any(i != j for i, j in enumerate(order)):
                    mismatches += 1
                    logger.warning(f"{plan.param}={value:g} 扇区 {s}: 能级追踪顺序 {order}，重叠 {min(weights):.3f}")
            previous = current
    return mismatches


def _variational_records(plan: SweepPlan, value: float, point: Dict[int, object]) -> List[SweepRecord]:
    base = dict(model=plan.model.value, param=plan.param, value=float(value), fixed=dict(plan.fixed),
                provenance=Provenance.VARIATIONAL)
    rows = []
    for s in plan.sector_params:
        sector = s if plan.model is ModelTag.SEXTIC else plan.fixed["gamma"]
        result = point[s]
        if isinstance(result, VariationalResult):
            for nu in range(result.levels):
                rows.append(dict(nu=nu, sector=float(sector), energy=result.energy(nu),
                                 status=result.status_of(nu).value, convergence=result.convergence[nu]))
        else:
            status = "conditioning" if isinstance(result, ConditioningError) else "error"
            for nu in range(plan.levels):
                rows.append(dict(nu=nu, sector=float(sector), energy=math.nan, status=status, convergence=None))

    if plan.full_line and plan.model is ModelTag.SEXTIC and len(plan.sector_params) == 2:
        rows.sort(key=lambda r: (math.isnan(r["energy"]), r["energy"], r["sector"]))
        rows = rows[:plan.levels]
        for i, row in enumerate(rows):
            row["nu"] = i
    return [SweepRecord(**base, **row) for row in rows]


def truncation_points(plan: SweepPlan) -> List[TruncationPoint]:
    lo, hi = plan.window
    if plan.model is ModelTag.SEXTIC:
        other = "b" if plan.param == "a" else "a"
        return sextic_points_for_window(plan.param, plan.fixed.get(other, 0.0), lo, hi,
                                        plan.max_order, plan.sector_params)
    if plan.param != "a":
        raise ValueError("库仑模型的截断点只在扫描 a 时给出。")
    return coulomb_points_for_window(plan.fixed["gamma"], plan.fixed.get("b", 0.0), lo, hi, plan.max_order)


def _truncation_records(plan: SweepPlan, points: Sequence[TruncationPoint]) -> List[SweepRecord]:
    full_line = plan.full_line and plan.model is ModelTag.SEXTIC
    return [
        SweepRecord(
            model=plan.model.value, param=plan.param, value=p.value, fixed=dict(plan.fixed),
            nu=p.full_line_level if full_line else p.level, sector=p.sector, energy=p.energy,
            provenance=Provenance.TRUNCATION, order=p.n,
        )
        for p in points
    ]


def overlay_defects(plan: SweepPlan, points: Sequence[TruncationPoint]) -> List[Tuple[TruncationPoint, float]]:
    """
    每个截断点与同一能级变分曲线在该参数值处的偏差（蓝点落在红线上）。
    只比较扇区内编号小于 levels 的点。
    """
    defects = []
    for p in points:
        if p.level >= plan.levels:
            continue
        s = int(p.sector) if plan.model is ModelTag.SEXTIC else 0
        try:
            energy = level_energy(plan.params_at(p.value, s), p.level, plan.basis_size)
        except ConditioningError as e:
            logger.error(f"截断点 {plan.param}={p.value:g} 无法做变分比较: {e}")
            defects.append((p, math.inf))
            continue
        defects.append((p, abs(energy - p.energy)))
    return defects


async def run_sweep(plan: SweepPlan, jobs: int = 0, check_overlay: bool = True) -> SweepOutcome:
    jobs = jobs or config.DEFAULT_JOBS
    logger.info(f"开始扫描 {plan.model.value} {plan.param} ∈ [{plan.window[0]:g}, {plan.window[1]:g}]，"
                f"{len(plan.grid)} 个点，{plan.levels} 个能级，并发 {jobs}")
    solved = await _solve_grid(plan, jobs)

    warnings = 0
    if config.SWEEP_CONFIG.get("track_levels", True):
        warnings += _track(plan, solved)

    records: List[SweepRecord] = []
    for value, point in zip(plan.grid, solved):
        records.extend(_variational_records(plan, value, point))
    unconverged = sum(1 for r in records if not r.converged)
    if unconverged:
        logger.warning(f"{unconverged} 条变分记录未收敛或失败")
    warnings += unconverged

    points = truncation_points(plan)
    records.extend(_truncation_records(plan, points))

    defects: List[Tuple[TruncationPoint, float]] = []
    if check_overlay and points:
        defects = await asyncio.to_thread(overlay_defects, plan, points)
        tol = config.SWEEP_CONFIG.get("overlay_tol", 1e-6)
        bad = [(p, d) for p, d in defects if d > tol]
        for p, d in bad:
            logger.warning(f"截断点 {plan.param}={p.value:.10g} E={p.energy:.10g} 偏离变分曲线 {d:.3e}")
        warnings += len(bad)
    logger.info(f"扫描完成：{len(records)} 条记录，其中截断点 {len(points)} 个")
    return SweepOutcome(records=records, warnings=warnings, overlay_defects=defects)
