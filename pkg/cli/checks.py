# cli/checks.py
"""
`check` 子命令的各个检查套件。每个套件返回 CheckItem 列表，失败不抛异常。
"""
from __future__ import annotations

import logging
import math
from typing import Callable, Dict, List

import numpy as np

import config
from cli.records import CheckItem, CheckReport
from cli.sweep import SweepPlan, overlay_defects, truncation_points
from cli.threshold import find_threshold
from models.action import matched_next_coefficient
from models.coulomb import CoulombRecurrence, coulomb_H_action, coulomb_coeffs
from models.params import CoulombParams, ModelTag, SexticParams
from models.sextic import SexticRecurrence, sextic_H_action, sextic_coeffs
from moments.quadrature import quadrature_oracle
from moments.tables import coulomb_moments, sextic_moments
from truncation.closed_forms import (
    coulomb_n0,
    coulomb_n1,
    coulomb_n2_cubic,
    sextic_n0,
    sextic_n1,
    sextic_n2_cubic,
)
from truncation.solver import coulomb_solution, sextic_spectrum, state_nodes
from ttrr.polynomial import polynomial_roots
from utility.errors import QesError
from variational.basis import VariationalSpec
from variational.observables import hellmann_feynman_check
from variational.solver import spectrum

logger = logging.getLogger("qes_spectra").getChild("check")


def _rng() -> np.random.Generator:
    return np.random.default_rng(config.CHECK_CONFIG.get("seed", 20240611))


def _relative(x: float, y: float) -> float:
    return abs(x - y) / max(1.0, abs(x), abs(y))


# ===================================================================
# 各检查套件
# ===================================================================

def check_recurrence() -> List[CheckItem]:
    """H 在基上的作用逐项匹配后给出的 c_{j+1} 与三项递推一致。"""
    items = []
    worst = {ModelTag.SEXTIC: 0.0, ModelTag.COULOMB: 0.0}
    for s in (0, 1):
        for a in (-2.0, 0.0, 3.5):
            for b in (-1.5, 0.0, 2.0):
                params = SexticParams(a=a, b=b, s=s)
                for energy in (-1.0, 0.7):
                    c_prev, c = 0.0, 1.0
                    for j in range(21):
                        a_j, b_j = sextic_coeffs(j, params, energy)
                        expected = a_j * c + b_j * c_prev
                        matched = matched_next_coefficient(lambda p: sextic_H_action(p, params), j, energy, c, c_prev)
                        worst[ModelTag.SEXTIC] = max(worst[ModelTag.SEXTIC], _relative(matched, expected))
                        c_prev, c = c, expected
    for gamma in (0.5, 1.0, 2.0):
        for b in (-1.0, 0.0, 1.0):
            for a in (-2.0, 1.0):
                params = CoulombParams(gamma=gamma, a=a, b=b)
                for energy in (3.0, 6.5):
                    c_prev, c = 0.0, 1.0
                    for j in range(11):
                        a_j, b_j = coulomb_coeffs(j, params, energy)
                        expected = a_j * c + b_j * c_prev
                        matched = matched_next_coefficient(lambda p: coulomb_H_action(p, params), j, energy, c, c_prev)
                        worst[ModelTag.COULOMB] = max(worst[ModelTag.COULOMB], _relative(matched, expected))
                        c_prev, c = c, expected
    for model, defect in worst.items():
        items.append(CheckItem(name=f"recurrence.{model.value}", passed=bool(defect <= 1e-12),
                               detail="H 作用匹配 vs 三项递推的最大相对偏差", value=defect))
    return items


def check_symmetry() -> List[CheckItem]:
    """振子截断能量集合满足 E(-b) = -E(b)。"""
    worst = 0.0
    for b in (0.5, 1.3, 2.7, 4.1):
        for s in (0, 1):
            for n in range(7):
                plus = np.array(sextic_spectrum(n, s, b).energies)
                minus = np.array(sextic_spectrum(n, s, -b).energies)
                worst = max(worst, float(np.max(np.abs(np.sort(-minus) - np.sort(plus)) / (1.0 + np.abs(plus)))))
    items = [CheckItem(name="symmetry.truncation", passed=bool(worst <= 1e-12), detail="E(-b) 与 -E(b) 的最大偏差", value=worst)]

    # a=0 扫描中的蓝点关于原点对称
    plan = SweepPlan(model=ModelTag.SEXTIC, param="b", grid=(-6.0, 6.0), fixed={"a": 0.0}, max_order=6)
    points = truncation_points(plan)
    keys = sorted((round(p.value, 9), round(p.energy, 9)) for p in points)
    mirrored = sorted((round(-v, 9), round(-e, 9)) for v, e in keys)
    items.append(CheckItem(name="symmetry.figure", passed=keys == mirrored,
                           detail=f"a=0 窗口内 {len(keys)} 个截断点关于原点对称"))
    return items


def check_reality() -> List[CheckItem]:
    """对称化三对角的本征值与 c_{n+1}(λ) 伴随矩阵根一致。"""
    worst = 0.0
    for n in range(11):
        for s in (0, 1):
            for b in (-2.0, 0.5, 3.0):
                solution = sextic_spectrum(n, s, b)
                params = SexticParams(a=solution.a, b=b, s=s)
                oracle = polynomial_roots(SexticRecurrence(), params, n)
                worst = max(worst, _root_defect(solution.energies, oracle))
        for gamma in (0.5, 1.0):
            solution = coulomb_solution(n, gamma, 1.0)
            oracle = polynomial_roots(CoulombRecurrence(solution.energy), CoulombParams(gamma=gamma, b=1.0), n)
            worst = max(worst, _root_defect(solution.a_roots, oracle))
    return [CheckItem(name="reality.roots", passed=bool(worst <= 1e-9), detail="三对角本征值 vs 多项式根", value=worst)]


def _root_defect(roots, oracle) -> float:
    roots = np.sort(np.asarray(roots, dtype=float))
    if len(roots) != len(oracle):
        return math.inf
    return float(np.max(np.abs(roots - oracle) / (1.0 + np.abs(oracle))))


def check_closed_forms() -> List[CheckItem]:
    rng = _rng()
    worst_explicit, worst_cubic = 0.0, 0.0
    for _ in range(50):
        b = float(rng.uniform(-6.0, 6.0))
        s = int(rng.integers(0, 2))
        a0, e0 = sextic_n0(s, b)
        sol = sextic_spectrum(0, s, b)
        worst_explicit = max(worst_explicit, _relative(sol.a, a0), _relative(sol.energies[0], e0))
        a1, e1, _ = sextic_n1(s, b)
        sol = sextic_spectrum(1, s, b)
        worst_explicit = max(worst_explicit, _relative(sol.a, a1),
                             *(_relative(x, y) for x, y in zip(sol.energies, sorted(e1))))
        cubic = sextic_n2_cubic(s, b)
        for energy in sextic_spectrum(2, s, b).energies:
            worst_cubic = max(worst_cubic, abs(cubic(energy)) / (8.0 * (1.0 + abs(energy)) ** 3))
    for gamma in (0.5, 1.0, 2.5):
        for b in rng.uniform(-3.0, 3.0, size=5):
            b = float(b)
            e0, a0 = coulomb_n0(gamma, b)
            sol = coulomb_solution(0, gamma, b)
            worst_explicit = max(worst_explicit, _relative(sol.energy, e0), _relative(sol.a_roots[0], a0))
            e1, roots, _ = coulomb_n1(gamma, b)
            sol = coulomb_solution(1, gamma, b)
            worst_explicit = max(worst_explicit, _relative(sol.energy, e1),
                                 *(_relative(x, y) for x, y in zip(sol.a_roots, sorted(roots))))
            cubic = coulomb_n2_cubic(gamma, b)
            for a in coulomb_solution(2, gamma, b).a_roots:
                worst_cubic = max(worst_cubic, abs(cubic(a)) / (1.0 + abs(a)) ** 3)
    return [
        CheckItem(name="closed_forms.explicit", passed=bool(worst_explicit <= 1e-12), value=worst_explicit,
                  detail="n=0,1 显式公式"),
        CheckItem(name="closed_forms.cubic", passed=bool(worst_cubic <= 1e-9), value=worst_cubic,
                  detail="n=2 三次方程残差"),
    ]


def check_nodes() -> List[CheckItem]:
    rng = _rng()
    failures = []
    for b in rng.uniform(-6.0, 6.0, size=20):
        b = float(b)
        for n in range(7):
            for s in (0, 1):
                solution = sextic_spectrum(n, s, b)
                for i in range(len(solution.energies)):
                    try:
                        nodes, full = state_nodes(solution, i)
                    except QesError as e:
                        failures.append(f"sextic n={n} s={s} b={b:.4f} i={i}: {e}")
                        continue
                    if (nodes, full) != (i + s, 2 * i + s):
                        failures.append(f"sextic n={n} s={s} b={b:.4f} i={i}: {nodes}, {full}")
    for b in rng.uniform(-3.0, 3.0, size=20):
        b = float(b)
        for n in range(7):
            solution = coulomb_solution(n, 1.0, b)
            for i in range(len(solution.a_roots)):
                try:
                    nodes, _ = state_nodes(solution, i)
                except QesError as e:
                    failures.append(f"coulomb n={n} b={b:.4f} i={i}: {e}")
                    continue
                if nodes != i:
                    failures.append(f"coulomb n={n} b={b:.4f} i={i}: {nodes}")
    return [CheckItem(name="nodes.law", passed=not failures, detail="; ".join(failures[:5]),
                      value=float(len(failures)))]


def check_moments() -> List[CheckItem]:
    items = []
    anchor = sextic_moments(0.0, 2).moment(0)
    expected = 2 ** 0.25 * math.gamma(0.25) / 2
    items.append(CheckItem(name="moments.anchor.sextic", passed=bool(_relative(anchor, expected) <= 1e-10),
                           value=_relative(anchor, expected), detail="μ_0(0) = 2^{1/4}Γ(1/4)/2"))
    anchor = coulomb_moments(0.0, 0.0, 2).moment(0)
    expected = math.sqrt(math.pi) / 2
    items.append(CheckItem(name="moments.anchor.coulomb", passed=bool(_relative(anchor, expected) <= 1e-10),
                           value=_relative(anchor, expected), detail="ν_0(0) = √π/2"))

    tables = [(ModelTag.SEXTIC, sextic_moments(b, 40)) for b in (-2.0, 0.0, 1.0, 3.0)]
    tables += [
        (ModelTag.COULOMB, coulomb_moments(2 * gamma, b, 24))
        for gamma in (0.5, 1.0, 2.5) for b in (-1.0, 0.0, 1.0, 2.0)
    ]
    worst, compared, replaced = 0.0, 0, 0
    for model, table in tables:
        replaced += len(table.replaced)
        for k, m in enumerate(table.orders):
            # 已被直接积分替换的项与对照相同，不参与比较
            if k in table.replaced:
                continue
            value, _ = quadrature_oracle(model, float(m), table.b)
            worst = max(worst, abs(table.values[k] - value) / value)
            compared += 1
    items.append(CheckItem(name="moments.oracle", passed=bool(worst <= 1e-9), value=worst,
                           detail=f"递推 vs 直接积分（比较 {compared} 项，{replaced} 项已改用直接积分）"))
    items.append(CheckItem(name="moments.replaced", passed=replaced < compared, value=float(replaced),
                           detail="递推误差估计过大而改用直接积分的项数"))
    return items


def _draw_hf_params(rng: np.random.Generator, model: ModelTag):
    if model is ModelTag.SEXTIC:
        s = int(rng.integers(0, 2))
        return SexticParams(a=float(rng.uniform(-2.0, 6.0)), b=float(rng.uniform(-2.0, 2.0)), s=s)
    return CoulombParams(gamma=float(rng.uniform(0.5, 2.5)), a=float(rng.uniform(-3.0, 3.0)),
                         b=float(rng.uniform(-1.0, 1.0)))


def converged_hf_points(rng: np.random.Generator, model: ModelTag, count: int, levels: int,
                        max_draws: int) -> List[VariationalSpec]:
    """
    随机抽取参数点，只保留最低 levels 个能级在收敛阶梯上全部收敛的点。
    基函数的权重随 b 变化，b 方向的差分只在收敛的能级上等于 -⟨∂V/∂b⟩。
    """
    accepted: List[VariationalSpec] = []
    for _ in range(max_draws):
        if len(accepted) >= count:
            break
        spec = VariationalSpec(params=_draw_hf_params(rng, model), levels=levels)
        try:
            result = spectrum(spec)
        except QesError as e:
            logger.info(f"HF 抽样跳过 {spec.params!r}: {e}")
            continue
        if result.converged:
            accepted.append(spec)
        else:
            logger.info(f"HF 抽样跳过未收敛的点 {spec.params!r}（最大变化 {max(result.convergence):.2e}）")
    return accepted


def check_hf() -> List[CheckItem]:
    rng = _rng()
    count = config.CHECK_CONFIG.get("random_samples", 10)
    levels = config.HF_CONFIG.get("max_level", 3) + 1
    max_draws = count * config.HF_CONFIG.get("draw_factor", 6)
    items = []
    for model in (ModelTag.SEXTIC, ModelTag.COULOMB):
        specs = converged_hf_points(rng, model, count, levels, max_draws)
        items.append(CheckItem(name=f"hf.{model.value}.sampling", passed=len(specs) == count,
                               value=float(len(specs)), detail=f"{max_draws} 次抽样中收敛的参数点"))
        for spec in specs:
            for parameter in ("a", "b"):
                for nu in range(levels):
                    name = f"hf.{model.value}.{parameter}.{nu}"
                    try:
                        result = hellmann_feynman_check(spec, nu, parameter)
                    except QesError as e:
                        items.append(CheckItem(name=name, passed=False, detail=f"{spec.params!r}: {e}"))
                        continue
                    items.append(CheckItem(name=name, passed=result.passed, value=result.gap,
                                           detail=repr(spec.params)))
    return items


def check_thresholds() -> List[CheckItem]:
    items = []
    for entry in config.THRESHOLDS:
        name = f"threshold.{entry['sweep']}.{entry['level']}@" + ",".join(f"{k}={v:g}" for k, v in entry["fixed"].items())
        try:
            result = find_threshold(ModelTag.SEXTIC, entry["fixed"], entry["sweep"], entry["level"], full_line=True,
                                    bracket=tuple(entry["bracket"]))
        except QesError as e:
            items.append(CheckItem(name=name, passed=False, detail=str(e)))
            continue
        defect = abs(result.root - entry["value"])
        items.append(CheckItem(name=name, passed=bool(defect <= entry["tol"]), value=result.root,
                               detail=f"期望 {entry['value']}，偏差 {defect:.2e}"))
    return items


def check_figures() -> List[CheckItem]:
    """每张图的截断点都落在对应能级的变分曲线上。"""
    items = []
    tol = config.SWEEP_CONFIG.get("overlay_tol", 1e-6)
    for name, preset in config.FIGURES.items():
        param, start, stop, _ = preset["sweep"]
        plan = SweepPlan(model=ModelTag(preset["model"]), param=param, grid=(start, stop),
                         fixed=dict(preset["fixed"]), levels=preset["levels"])
        defects = overlay_defects(plan, truncation_points(plan))
        worst = max((d for _, d in defects), default=0.0)
        items.append(CheckItem(name=f"figures.{name}", passed=bool(worst <= tol), value=worst,
                               detail=f"{len(defects)} 个截断点"))
    return items


SUITES: Dict[str, Callable[[], List[CheckItem]]] = {
    "recurrence": check_recurrence,
    "symmetry": check_symmetry,
    "hf": check_hf,
    "moments": check_moments,
    "reality": check_reality,
    "closed-forms": check_closed_forms,
    "nodes": check_nodes,
    "thresholds": check_thresholds,
    "figures": check_figures,
}


def run_suite(name: str) -> CheckReport:
    names = list(SUITES) if name == "all" else [name]
    items: List[CheckItem] = []
    for suite in names:
        logger.info(f"运行检查套件 {suite}")
        items.extend(SUITES[suite]())
    report = CheckReport.from_items(name, items)
    failed = [i.name for i in items if not i.passed]
    if failed:
        logger.warning(f"{len(failed)} 项检查失败: {', '.join(failed[:10])}")
    return report
