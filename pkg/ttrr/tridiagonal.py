# ttrr/tridiagonal.py
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ttrr.recurrence import RecurrenceModel
from utility.errors import ModelContractError, SymmetrizationError


@dataclass(frozen=True)
class TridiagonalSystem:
    """
    截断后的方程组 U_j c_{j-1} + (V_j - λ) c_j + W_j c_{j+1} = 0, j=0..n，
    第 n 行按 c_{n+1}=0 处理。特征值就是 λ 本身（不需要翻转符号）。
    """
    lower: Tuple[float, ...]  # U_1..U_n
    diagonal: Tuple[float, ...]  # V_0..V_n
    upper: Tuple[float, ...]  # W_0..W_{n-1}
    parameter: str

    @property
    def order(self) -> int:
        return len(self.diagonal) - 1

    def to_dense(self) -> np.ndarray:
        """非对称的稠密矩阵 M，满足 M c = λ c。"""
        size = len(self.diagonal)
        m = np.diag(np.array(self.diagonal, dtype=float))
        for j in range(size - 1):
            m[j, j + 1] = self.upper[j]
            m[j + 1, j] = self.lower[j]
        return m


@dataclass(frozen=True)
class SymTridiag:
    """
    实对称三对角矩阵。
    similarity 是变换 c_j = Q_j c̃_j 中的 Q_j（Q_0 = 1），可为空。
    """
    diagonal: Tuple[float, ...]  # d_0..d_n
    off_diagonal: Tuple[float, ...]  # e_1..e_n
    similarity: Tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.off_diagonal) != max(len(self.diagonal) - 1, 0):
            raise ValueError("非对角元个数必须比对角元少一。")
        if not all(math.isfinite(v) for v in self.diagonal + self.off_diagonal):
            raise ValueError("三对角矩阵含有非有限元素。")

    @property
    def size(self) -> int:
        return len(self.diagonal)

    def to_dense(self) -> np.ndarray:
        d = np.array(self.diagonal, dtype=float)
        e = np.array(self.off_diagonal, dtype=float)
        return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)

    def leading(self, k: int) -> SymTridiag:
        """前 k 阶主子矩阵。"""
        if not 1 <= k <= self.size:
            raise ValueError(f"主子矩阵阶数 {k} 超出范围 1..{self.size}。")
        return SymTridiag(
            diagonal=self.diagonal[:k],
            off_diagonal=self.off_diagonal[:k - 1],
            similarity=self.similarity[:k],
        )


def to_tridiagonal(model: RecurrenceModel, params: Any, n: int) -> TridiagonalSystem:
    """
    把递推的每一行除以 A_j 对 λ 的斜率，使 λ 的系数恰为 -1：
    U_j = -B_j/slope_j, V_j = -intercept_j/slope_j, W_j = 1/slope_j。
    """
    if n < 0:
        raise ValueError(f"截断阶数 n 必须非负，收到 {n}。")
    lower, diagonal, upper = [], [], []
    for j in range(n + 1):
        slope, intercept = model.a_affine(j, params)
        if slope == 0 or not math.isfinite(slope):
            raise ModelContractError(j)
        diagonal.append(-intercept / slope)
        if j < n:
            upper.append(1.0 / slope)
        if j >= 1:
            lower.append(-model.b_coefficient(j, params) / slope)
    return TridiagonalSystem(
        lower=tuple(lower),
        diagonal=tuple(diagonal),
        upper=tuple(upper),
        parameter=model.spectral_parameter,
    )


def symmetrize(system: TridiagonalSystem) -> SymTridiag:
    """
    Q_{j+1}^2 = (U_{j+1}/W_j) Q_j^2，Q_0 = 1。
    取 e_{j+1} = +sqrt(U_{j+1} W_j)；Q 带上 W_j 的符号，使 c_j = Q_j c̃_j 仍然成立。
    """
    off_diagonal = []
    similarity = [1.0]
    for j in range(system.order):
        u_next, w_j = system.lower[j], system.upper[j]
        ratio = u_next / w_j
        if not ratio > 0:
            raise SymmetrizationError(j + 1, ratio)
        e = math.sqrt(u_next * w_j)
        off_diagonal.append(e)
        similarity.append(similarity[-1] * e / w_j)
    return SymTridiag(
        diagonal=tuple(system.diagonal),
        off_diagonal=tuple(off_diagonal),
        similarity=tuple(similarity),
    )


def eig_sym_tridiag(t: SymTridiag) -> np.ndarray:
    """全部特征值，升序。使用 LAPACK 的二分法 (stebz)。"""
    d = np.array(t.diagonal, dtype=float)
    e = np.array(t.off_diagonal, dtype=float)
    if d.size == 1:
        return d.copy()
    if not np.any(e):
        # 对角矩阵直接返回排序后的对角元
        return np.sort(d)
    return eigh_tridiagonal(d, e, eigvals_only=True, lapack_driver="stebz")


def eigvecs_sym_tridiag(t: SymTridiag) -> Tuple[np.ndarray, np.ndarray]:
    """特征值与列特征向量（用于由 Q_j 回到 c_j 的交叉检验）。"""
    d = np.array(t.diagonal, dtype=float)
    e = np.array(t.off_diagonal, dtype=float)
    if d.size == 1:
        return d.copy(), np.ones((1, 1))
    return eigh_tridiagonal(d, e, lapack_driver="stemr")
