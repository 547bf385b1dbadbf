# variational/solver.py
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

import config
from models.params import SexticParams
from utility.errors import ConditioningError
from variational.basis import Params, VariationalSpec
from variational.reduction import ReducedModel, mixed_overlap, reduced_model

logger = logging.getLogger("qes_spectra").getChild("variational")


class SolveStatus(str, Enum):
    OK = 'ok'
    UNCONVERGED = 'unconverged'
    CONDITIONING = 'conditioning'


@dataclass(frozen=True)
class VariationalResult:
    """
    最低 k 个能级。coefficients 的第 i 列是 φ 基中的系数（Gram 度规下归一），
    vectors 是正交化基中的坐标，用于能级追踪。
    status 是所有能级中最差的状态；level_status 逐能级记录，为空时每个能级都取 status。
    """
    energies: np.ndarray
    coefficients: np.ndarray
    vectors: np.ndarray
    convergence: Tuple[float, ...]
    condition: float
    basis_size: int
    status: SolveStatus = SolveStatus.OK
    params: Optional[Params] = None
    reduced: Optional[ReducedModel] = field(default=None, compare=False, repr=False)
    level_status: Tuple[SolveStatus, ...] = ()

    @property
    def converged(self) -> bool:
        return self.status is SolveStatus.OK

    @property
    def levels(self) -> int:
        return len(self.energies)

    def energy(self, nu: int) -> float:
        return float(self.energies[nu])

    def status_of(self, nu: int) -> SolveStatus:
        if not 0 <= nu < self.levels:
            raise IndexError(f"能级 {nu} 不在结果中（共 {self.levels} 个）。")
        return self.level_status[nu] if self.level_status else self.status

    def level_converged(self, nu: int) -> bool:
        return self.status_of(nu) is SolveStatus.OK


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


# ===================================================================
# 广义本征问题（双精度）
# ===================================================================

def _largest_safe_prefix(scaled: np.ndarray, threshold: float) -> int:
    safe = 0
    for n in range(1, scaled.shape[0] + 1):
        w = np.linalg.eigvalsh(scaled[:n, :n])
        if w[0] <= 0 or w[-1] / w[0] > threshold:
            break
        safe = n
    return safe


def solve_generalized(h: np.ndarray, s: np.ndarray, k: int, threshold: float = 0.0) -> VariationalResult:
    """
    Hc = ESc 的最低 k 个本征对。S 先做 Jacobi 缩放再检查条件数，
    之后交给 scipy.linalg.eigh（内部为 Cholesky + 对称本征求解）。
    """
    h = np.asarray(h, dtype=float)
    s = np.asarray(s, dtype=float)
    n = s.shape[0]
    if h.shape != (n, n) or s.shape != (n, n):
        raise ValueError(f"H 与 S 必须是同阶方阵，收到 {h.shape} 与 {s.shape}。")
    if not 1 <= k <= n:
        raise ValueError(f"k 必须在 1..{n} 之间，收到 {k}。")
    threshold = threshold or config.VARIATIONAL_CONFIG.get("condition_threshold", 1e13)

    diag = np.diag(s)
    if np.any(diag <= 0):
        raise ConditioningError(math.inf, 0)
    d = 1.0 / np.sqrt(diag)
    ss = s * np.outer(d, d)
    hs = h * np.outer(d, d)
    w = np.linalg.eigvalsh(ss)
    condition = math.inf if w[0] <= 0 else float(w[-1] / w[0])
    if condition > threshold:
        raise ConditioningError(condition, _largest_safe_prefix(ss, threshold))

    try:
        energies, y = scipy.linalg.eigh(hs, ss, subset_by_index=[0, k - 1])
    except np.linalg.LinAlgError as e:
        raise ConditioningError(condition, _largest_safe_prefix(ss, threshold)) from e
    c = d[:, None] * y

    status = SolveStatus.OK
    scale = np.linalg.norm(h) or 1.0
    residual = np.linalg.norm(h @ c - (s @ c) * energies[None, :], axis=0) / scale
    if residual.max() > config.VARIATIONAL_CONFIG.get("residual_tol", 1e-8):
        logger.warning(f"广义本征问题残差 {residual.max():.3e} 超过容差")
        status = SolveStatus.UNCONVERGED

    return VariationalResult(
        energies=_readonly(energies), coefficients=_readonly(c), vectors=_readonly(y),
        convergence=tuple(math.nan for _ in range(k)), condition=condition,
        basis_size=n, status=status,
    )


# ===================================================================
# 约化基中的求解
# ===================================================================

def _eigen(reduced: ReducedModel, a: float, n: int, k: int) -> Tuple[np.ndarray, np.ndarray]:
    return scipy.linalg.eigh(reduced.hamiltonian(a, n), subset_by_index=[0, k - 1])


def _result(reduced: ReducedModel, spec: VariationalSpec, n: int, energies, vectors,
            convergence: Sequence[float], status: SolveStatus,
            level_status: Sequence[SolveStatus] = ()) -> VariationalResult:
    return VariationalResult(
        energies=_readonly(energies),
        coefficients=_readonly(reduced.coefficients(vectors)),
        vectors=_readonly(vectors),
        convergence=tuple(float(x) for x in convergence),
        condition=reduced.condition_at(n),
        basis_size=n,
        status=status,
        params=spec.params,
        reduced=reduced,
        level_status=tuple(level_status),
    )


def solve_fixed(spec: VariationalSpec) -> VariationalResult:
    """固定基组大小 N 的 Rayleigh–Ritz 解；N 超过条件数允许的大小时抛出 ConditioningError。"""
    reduced = reduced_model(spec.params, spec.basis_size, spec.condition_threshold)
    if reduced.size < spec.basis_size:
        raise ConditioningError(reduced.condition_at(reduced.size + 1), reduced.size)
    energies, y = _eigen(reduced, spec.params.a, spec.basis_size, spec.levels)
    return _result(reduced, spec, spec.basis_size, energies, y,
                   [math.nan] * spec.levels, SolveStatus.OK)


def _ladder(levels: int, limit: int) -> List[int]:
    step = config.VARIATIONAL_CONFIG.get("basis_step", 5)
    sizes = [n for n in range(step, limit + 1, step) if n >= levels]
    if not sizes or sizes[-1] != limit:
        sizes.append(limit)
    return sizes


def spectrum(spec: VariationalSpec) -> VariationalResult:
    """
    逐步加大 N（步长 basis_step），直到所有能级 |E(N) - E(N-step)| 小于收敛容差，
    或到达 spec.basis_size / 条件数上限。未收敛时返回最后一步的结果；
    收敛状态逐能级记录，已收敛的低能级不受高能级拖累。
    """
    reduced = reduced_model(spec.params, spec.basis_size, spec.condition_threshold)
    limit = min(spec.basis_size, reduced.size)
    if limit < spec.levels:
        raise ConditioningError(reduced.condition_at(limit + 1), limit)

    tol = config.VARIATIONAL_CONFIG.get("convergence_tol", 1e-9)
    a = spec.params.a
    previous: Optional[np.ndarray] = None
    convergence = [math.inf] * spec.levels
    energies, y, n = None, None, 0
    for n in _ladder(spec.levels, limit):
        energies, y = _eigen(reduced, a, n, spec.levels)
        if previous is not None:
            convergence = [float(x) for x in np.abs(energies - previous)]
            if max(convergence) < tol:
                return _result(reduced, spec, n, energies, y, convergence, SolveStatus.OK,
                               [SolveStatus.OK] * spec.levels)
        previous = energies

    failed = SolveStatus.CONDITIONING if limit < spec.basis_size else SolveStatus.UNCONVERGED
    level_status = [SolveStatus.OK if d < tol else failed for d in convergence]
    logger.warning(
        f"{spec.params!r}: N={n} 时 {level_status.count(failed)}/{spec.levels} 个能级未收敛"
        f"（最大变化 {max(convergence):.3e}），状态 {failed.value}"
    )
    return _result(reduced, spec, n, energies, y, convergence, failed, level_status)


# ===================================================================
# 能级编号与追踪
# ===================================================================

def level_energy(params: Params, nu: int, basis_size: Optional[int] = None, full_line: bool = False) -> float:
    """
    固定 N 的第 nu 个能级（对参数光滑，供二分与有限差分使用）。
    full_line=True 时 nu 是整条直线上的编号：偶数落在 s=0，奇数落在 s=1。
    """
    if nu < 0:
        raise ValueError(f"能级编号必须非负，收到 {nu}。")
    if full_line and isinstance(params, SexticParams):
        params = params.model_copy(update={"s": nu % 2})
        nu //= 2
    size = basis_size or config.VARIATIONAL_CONFIG.get("basis_size", 25)
    reduced = reduced_model(params, size)
    n = min(size, reduced.size)
    if n <= nu:
        raise ConditioningError(reduced.condition_at(n + 1), n)
    energies, _ = _eigen(reduced, params.a, n, nu + 1)
    return float(energies[nu])


def merge_sectors(even: VariationalResult, odd: VariationalResult) -> List[Tuple[float, int, int]]:
    """两个宇称扇区按能量合并为 (E, s, 扇区内编号) 列表。"""
    rows = [(float(e), 0, i) for i, e in enumerate(even.energies)]
    rows += [(float(e), 1, i) for i, e in enumerate(odd.energies)]
    return sorted(rows)


def _padded(vectors: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros((n, vectors.shape[1]))
    m = min(n, vectors.shape[0])
    out[:m] = vectors[:m]
    return out


def match_levels(previous: VariationalResult, current: VariationalResult,
                 mixed: Optional[np.ndarray] = None) -> Tuple[Tuple[int, ...], Tuple[float, ...]]:
    """
    按 Gram 度规重叠把 previous 的每个能级对应到 current 的能级。
    返回 (current 中的下标, 对应的 |重叠|)。
    两个结果来自不同的约化模型（例如 b 不同）且未给出 mixed 时自动计算混合重叠。
    """
    if mixed is None:
        if previous.reduced is not None and current.reduced is not None \
                and previous.reduced is not current.reduced:
            n = min(previous.reduced.size, current.reduced.size,
                    max(previous.basis_size, current.basis_size))
            mixed = mixed_overlap(previous.reduced, current.reduced, n)
        else:
            n = max(previous.basis_size, current.basis_size)
            mixed = np.eye(n)
    n = mixed.shape[0]
    left = _padded(previous.vectors, n)
    right = _padded(current.vectors, n)
    overlap = np.abs(left.T @ mixed @ right)
    rows, cols = linear_sum_assignment(-overlap)
    order = [0] * len(rows)
    weights = [0.0] * len(rows)
    for r, c in zip(rows, cols):
        order[r] = int(c)
        weights[r] = float(overlap[r, c])
    return tuple(order), tuple(weights)
