# cli/commands.py
"""
子命令实现。每个命令返回退出码：0 成功，1 检查失败或计算失败，2 用法错误（由调用方映射）。
"""
from __future__ import annotations

import argparse
import logging
from typing import Dict, List, Optional

import config
from cli.checks import run_suite
from cli.emitters import records_csv, sweep_csv, sweep_svg, to_json
from cli.records import ExactRow, MomentRow
from cli.sweep import SweepPlan, run_sweep
from cli.threshold import find_threshold
from models.params import CoulombParams, ModelTag
from moments.tables import coulomb_moments, sextic_moments
from truncation.solver import (
    assemble_wavefunction,
    coulomb_solution,
    label_state,
    residual_ratio,
    sextic_spectrum,
    state_nodes,
)
from utility.errors import AmbiguousNodeError, PrecisionError, UsageError
from utility.helpers import is_grid, parse_bracket, parse_grid
from utility.result_writer import AsyncResultWriter

logger = logging.getLogger("qes_spectra").getChild("cli")

EXACT_COLUMNS = ("model", "n", "sector", "b", "a", "energy", "root_index", "nodes", "full_line_nodes", "level",
                 "residual")
MOMENT_COLUMNS = ("m", "value", "err_estimate", "status")
THRESHOLD_COLUMNS = ("model", "param", "level", "sector", "full_line", "bracket", "root", "residual")
CHECK_COLUMNS = ("name", "passed", "value", "detail")


def _require_gamma(args: argparse.Namespace) -> float:
    if args.gamma is None:
        raise UsageError("库仑模型需要 --gamma。")
    # 在这里触发 γ > 0 的校验
    return CoulombParams(gamma=args.gamma).gamma


async def _emit(args: argparse.Namespace, content: str):
    await AsyncResultWriter(args.out).write(content)


# ===================================================================
# exact
# ===================================================================

def exact_rows(model: ModelTag, n: int, s: int = 0, gamma: Optional[float] = None, b: float = 0.0) -> List[ExactRow]:
    if model is ModelTag.SEXTIC:
        solution = sextic_spectrum(n, s, b)
    else:
        solution = coulomb_solution(n, gamma, b)
    residuals = residual_ratio(solution)
    rows = []
    for i, root in enumerate(solution.roots):
        label = label_state(solution, i)
        try:
            nodes, full = state_nodes(solution, i)
        except AmbiguousNodeError as e:
            logger.warning(f"根 {i}: {e}，改用按能级给出的节点数")
            nodes, full = label.nodes, (label.full_line_nodes if model is ModelTag.SEXTIC else None)
        wave = assemble_wavefunction(solution, i)
        if model is ModelTag.SEXTIC:
            a, energy = solution.a, root
        else:
            a, energy = root, solution.energy
        rows.append(ExactRow(
            model=model.value, n=n, sector=solution.sector, b=b, a=a, energy=energy, root_index=i,
            nodes=nodes, full_line_nodes=full, level=label.level, residual=float(residuals[i]),
            coefficients=list(wave.coefficients),
        ))
    return rows


async def cmd_exact(args: argparse.Namespace) -> int:
    model = ModelTag(args.model)
    gamma = _require_gamma(args) if model is ModelTag.COULOMB else None
    if args.n < 0:
        raise UsageError(f"--n 必须非负，收到 {args.n}。")
    rows = exact_rows(model, args.n, args.s, gamma, args.b)
    content = to_json(rows) if args.format == "json" else records_csv(rows, EXACT_COLUMNS)
    await _emit(args, content)
    return 0


# ===================================================================
# sweep
# ===================================================================

def sweep_plan(args: argparse.Namespace) -> SweepPlan:
    model = ModelTag(args.model)
    levels = args.levels or config.SWEEP_CONFIG.get("levels", 8)
    fixed: Dict[str, float] = {}
    if args.figure:
        preset = config.FIGURES[args.figure]
        if preset["model"] != model.value:
            raise UsageError(f"预设 {args.figure} 属于 {preset['model']} 模型。")
        param, start, stop, step = preset["sweep"]
        grid = parse_grid(f"{start}:{stop}:{step}")
        fixed.update(preset["fixed"])
        levels = args.levels or preset.get("levels", levels)
    else:
        grids = [name for name in ("a", "b") if getattr(args, name) is not None and is_grid(getattr(args, name))]
        if len(grids) != 1:
            raise UsageError("需要恰好一个以 start:stop:step 给出的扫描参数（--a 或 --b），或使用 --figure。")
        param = grids[0]
        grid = parse_grid(getattr(args, param))
        other = "b" if param == "a" else "a"
        raw = getattr(args, other)
        try:
            fixed[other] = float(raw) if raw is not None else 0.0
        except ValueError:
            raise UsageError(f"--{other} 必须是数值，收到 {raw!r}。")
    if model is ModelTag.COULOMB:
        if args.gamma is not None:
            fixed["gamma"] = _require_gamma(args)
        elif "gamma" not in fixed:
            raise UsageError("库仑模型需要 --gamma。")
    if levels < 1:
        raise UsageError("--levels 必须为正。")
    sectors = (args.s,) if args.s is not None else (0, 1)
    return SweepPlan(
        model=model, param=param, grid=tuple(float(v) for v in grid), fixed=fixed, levels=levels,
        sectors=sectors, full_line=args.full_line, basis_size=args.basis, max_order=args.max_order,
    )


async def cmd_sweep(args: argparse.Namespace) -> int:
    plan = sweep_plan(args)
    if plan.model is ModelTag.COULOMB and plan.param != "a":
        raise UsageError("库仑模型只支持扫描 a。")
    outcome = await run_sweep(plan, args.jobs)
    if args.format == "json":
        content = to_json(outcome.records)
    elif args.format == "svg":
        title = f"{plan.model.value} " + ", ".join(f"{k}={v:g}" for k, v in plan.fixed.items())
        content = sweep_svg(outcome.records, title)
    else:
        content = sweep_csv(outcome.records)
    await _emit(args, content)
    if outcome.warnings:
        logger.warning(f"扫描共有 {outcome.warnings} 条警告")
    return 0


# ===================================================================
# threshold
# ===================================================================

async def cmd_threshold(args: argparse.Namespace) -> int:
    model = ModelTag(args.model)
    fixed: Dict[str, float] = {k: getattr(args, k) for k in ("a", "b") if k != args.sweep}
    if model is ModelTag.COULOMB:
        fixed["gamma"] = _require_gamma(args)
    bracket = parse_bracket(args.bracket) if args.bracket else None
    full_line = model is ModelTag.SEXTIC and args.s is None
    result = find_threshold(
        model, fixed, args.sweep, args.level, s=args.s or 0, full_line=full_line,
        bracket=bracket, basis_size=args.basis,
    )
    content = to_json(result) if args.format == "json" else records_csv([result], THRESHOLD_COLUMNS)
    await _emit(args, content)
    return 0


# ===================================================================
# check
# ===================================================================

async def cmd_check(args: argparse.Namespace) -> int:
    report = run_suite(args.suite)
    content = to_json(report) if args.format == "json" else records_csv(report.items, CHECK_COLUMNS)
    await _emit(args, content)
    return 0 if report.passed else 1


# ===================================================================
# moments
# ===================================================================

def moment_rows(model: ModelTag, b: float, m_max: int, gamma: Optional[float] = None) -> List[MomentRow]:
    try:
        if model is ModelTag.SEXTIC:
            table = sextic_moments(b, m_max - m_max % 2)
        else:
            m0 = 2.0 * gamma
            count = int(m_max - m0) + 1
            if count < 1:
                raise UsageError(f"--max 必须不小于 m0 = 2γ = {m0:g}。")
            table = coulomb_moments(m0, b, count)
    except PrecisionError as e:
        logger.error(str(e))
        return [MomentRow(m=float(m_max), value=None, err_estimate=e.achieved, status="precision")]
    return [
        MomentRow(m=float(m), value=table.values[k], err_estimate=table.errors[k],
                  status="quadrature" if k in table.replaced else "ok")
        for k, m in enumerate(table.orders)
    ]


async def cmd_moments(args: argparse.Namespace) -> int:
    model = ModelTag(args.model)
    gamma = _require_gamma(args) if model is ModelTag.COULOMB else None
    if args.m_max < 0:
        raise UsageError("--max 必须非负。")
    rows = moment_rows(model, args.b, args.m_max, gamma)
    content = to_json(rows) if args.format == "json" else records_csv(rows, MOMENT_COLUMNS)
    await _emit(args, content)
    return 0


COMMANDS = {
    "exact": cmd_exact,
    "sweep": cmd_sweep,
    "threshold": cmd_threshold,
    "check": cmd_check,
    "moments": cmd_moments,
}
