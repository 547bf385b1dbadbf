# variational/cholesky.py
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Tuple

import numpy as np
from mpmath import mp

from utility.errors import ConditioningError

logger = logging.getLogger("qes_spectra").getChild("variational")


@dataclass(frozen=True)
class CholeskyReduction:
    """
    Cholesky 正交化：T = D·L⁻ᵀ，D = diag(S)^{-1/2}，D S D = L Lᵀ。
    Tᵀ S T = I，且 T 是上三角阵，所以前 n 阶主子块就是 n 个基函数的约化。
    conditions[k-1] 是前 k 阶缩放 Gram 矩阵的条件数估计。
    """
    size: int
    requested: int
    conditions: Tuple[float, ...]
    transform: Any = field(compare=False, repr=False)

    @property
    def condition(self) -> float:
        return self.conditions[self.size - 1] if self.size else math.inf

    def condition_at(self, n: int) -> float:
        if n <= len(self.conditions):
            return self.conditions[n - 1]
        return math.inf

    def reduce(self, matrix) -> np.ndarray:
        """Tᵀ M T（mp 精度），返回双精度对称矩阵。须在 precise_context 内调用。"""
        n = self.size
        block = mp.matrix(n, n)
        for i in range(n):
            for j in range(n):
                block[i, j] = matrix[i, j]
        reduced = self.transform.T * block * self.transform
        out = np.array(reduced.tolist(), dtype=float)
        return (out + out.T) / 2.0

    def back_transform(self, vectors: np.ndarray) -> np.ndarray:
        """约化坐标 y → φ 基系数 c = T y。"""
        y = np.atleast_2d(np.asarray(vectors, dtype=float))
        if y.shape[0] == 1 and y.shape[1] != 1:
            y = y.T
        n = y.shape[0]
        t = mp.matrix(n, n)
        for i in range(n):
            for j in range(i, n):
                t[i, j] = self.transform[i, j]
        c = t * mp.matrix(y.tolist())
        return np.array(c.tolist(), dtype=float)


def _wall(threshold: float) -> float:
    # 多出双精度的每一位十进制数字都让可接受的条件数放宽十倍
    return threshold * 10.0 ** max(mp.dps - 16, 0)


def cholesky_reduction(s, threshold: float, strict: bool = False) -> CholeskyReduction:
    """
    对 mp 矩阵 S 做对角缩放后的 Cholesky 分解，并求出条件数不超过阈值的最大前缀 N。
    strict=True 时若不能使用全部基函数则抛出 ConditioningError。
    """
    n = s.rows
    if n == 0 or not all(s[i, i] > 0 for i in range(n)):
        raise ConditioningError(math.inf, 0)
    d = [1 / mp.sqrt(s[i, i]) for i in range(n)]

    def scaled(i: int, j: int):
        return s[i, j] * d[i] * d[j]

    lower = mp.matrix(n, n)
    factored = n
    for j in range(n):
        acc = scaled(j, j) - mp.fsum(lower[j, k] ** 2 for k in range(j))
        if acc <= 0:
            factored = j
            break
        lower[j, j] = mp.sqrt(acc)
        for i in range(j + 1, n):
            lower[i, j] = (scaled(i, j) - mp.fsum(lower[i, k] * lower[j, k] for k in range(j))) / lower[j, j]

    inverse = mp.matrix(factored, factored)
    for i in range(factored):
        inverse[i, i] = 1 / lower[i, i]
        for j in range(i):
            inverse[i, j] = -mp.fsum(lower[i, k] * inverse[k, j] for k in range(j, i)) / lower[i, i]

    # ‖S‖₂ ≤ ‖S‖_F，‖S⁻¹‖₂ ≤ ‖L⁻¹‖_F²
    conditions = []
    fro_s, fro_inv = mp.mpf(0), mp.mpf(0)
    for k in range(factored):
        fro_s += 2 * mp.fsum(scaled(k, j) ** 2 for j in range(k)) + scaled(k, k) ** 2
        fro_inv += mp.fsum(inverse[k, j] ** 2 for j in range(k + 1))
        conditions.append(float(mp.sqrt(fro_s) * fro_inv))

    wall = _wall(threshold)
    safe = 0
    for cond in conditions:
        if cond > wall:
            break
        safe += 1
    if safe == 0:
        raise ConditioningError(conditions[0] if conditions else math.inf, 0)

    if safe < n:
        cond = conditions[safe] if safe < len(conditions) else math.inf
        logger.debug(f"Gram 矩阵前 {safe + 1} 阶条件数估计 {cond:.3e} 超过上限 {wall:.3e}")
        if strict:
            raise ConditioningError(cond, safe)

    transform = mp.matrix(safe, safe)
    for i in range(safe):
        for p in range(i + 1):
            transform[p, i] = d[p] * inverse[i, p]

    return CholeskyReduction(size=safe, requested=n, conditions=tuple(conditions), transform=transform)
