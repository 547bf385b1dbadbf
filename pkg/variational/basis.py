# variational/basis.py
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import Callable, Optional, Tuple, Union

import numpy as np
from mpmath import mp
from pydantic import BaseModel, ConfigDict, Field, model_validator

import config
from models.action import BasisAction
from models.coulomb import coulomb_H_action
from models.params import CoulombParams, ModelTag, SexticParams
from models.sextic import sextic_H_action
from moments.precise import precise_context, precise_coulomb_moments, precise_sextic_moments
from utility.errors import AssemblyError, TableExtensionError
from variational.cholesky import cholesky_reduction

logger = logging.getLogger("qes_spectra").getChild("variational")

Params = Union[SexticParams, CoulombParams]


class Observable(str, Enum):
    X2 = 'x2'
    X4 = 'x4'
    R = 'r'
    INV_R = '1/r'


# ===================================================================
# 变分设定
# ===================================================================

class VariationalSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    params: Params
    basis_size: int = Field(default_factory=lambda: config.VARIATIONAL_CONFIG.get("basis_size", 25), ge=1)
    condition_threshold: float = Field(
        default_factory=lambda: config.VARIATIONAL_CONFIG.get("condition_threshold", 1e13), gt=1.0,
    )
    levels: int = Field(default=1, ge=1)

    @model_validator(mode='after')
    def check_levels(self) -> 'VariationalSpec':
        if self.levels > self.basis_size:
            raise ValueError(f"请求的能级数 {self.levels} 超过基组大小 {self.basis_size}")
        return self


# ===================================================================
# 非正交基
# ===================================================================

class NonorthogonalBasis(ABC):
    """
    φ_j = 多项式单项 × 权重，j = 0..size-1。
    矩阵元全部由加权幂矩量给出，必须在 precise_context 内调用矩阵构造方法。
    """
    model: ModelTag
    # H 对 a 的导数为 -coupling
    coupling: Observable
    observables: Tuple[Observable, ...]

    def __init__(self, params: Params, size: int):
        if size < 1:
            raise ValueError(f"基组大小必须为正，收到 {size}。")
        self.params = params
        self.size = size
        # 矩量表按配置中的最大基组分配，使不同 N 共用同一张缓存表
        self.capacity = max(size, config.VARIATIONAL_CONFIG.get("basis_size", 25))

    @property
    def b(self) -> float:
        return self.params.b

    @abstractmethod
    def action(self, j: int) -> BasisAction:
        raise NotImplementedError(f"{self.__class__.__name__} 必须实现 action 方法。")

    @abstractmethod
    def order(self, k: int, l: int) -> float:
        """⟨φ_k|φ_l⟩ 对应的矩量阶数。"""
        raise NotImplementedError(f"{self.__class__.__name__} 必须实现 order 方法。")

    @abstractmethod
    def shift(self, observable: Observable) -> int:
        raise NotImplementedError(f"{self.__class__.__name__} 必须实现 shift 方法。")

    @abstractmethod
    def moment_accessor(self, b: float) -> Callable[[float], object]:
        raise NotImplementedError(f"{self.__class__.__name__} 必须实现 moment_accessor 方法。")

    # --- 矩阵构造（mp 精度） ---

    def gram(self, b: Optional[float] = None, size: Optional[int] = None):
        """S_kl；给出 b 时返回权重在 b 处的 Gram 矩阵（两组基的混合重叠取两者 b 的平均）。"""
        n = size or self.size
        moment = self.moment_accessor(self.b if b is None else b)
        s = mp.matrix(n, n)
        for k in range(n):
            for l in range(k, n):
                s[k, l] = s[l, k] = moment(self.order(k, l))
        return s

    def observable_matrix(self, observable: Observable):
        if observable not in self.observables:
            raise ValueError(f"观测量 {observable.value} 不属于 {self.model.value} 模型。")
        moment = self.moment_accessor(self.b)
        shift = self.shift(observable)
        n = self.size
        m = mp.matrix(n, n)
        for k in range(n):
            for l in range(k, n):
                m[k, l] = m[l, k] = moment(self.order(k, l) + shift)
        return m

    def hamiltonian(self, check: bool = True):
        """H_kj = Σ_o t_o(j) ⟨φ_k|φ_{j+o}⟩，随后对称化并检查非对称缺陷。"""
        moment = self.moment_accessor(self.b)
        n = self.size
        h = mp.matrix(n, n)
        for j in range(n):
            act = self.action(j)
            for offset, t in zip(act.offsets, act.coefficients):
                if t == 0:
                    continue
                for k in range(n):
                    h[k, j] += t * moment(self.order(k, j + offset))
        if check:
            scale = max(abs(h[i, j]) for i in range(n) for j in range(n)) or mp.mpf(1)
            defect = max(abs(h[i, j] - h[j, i]) for i in range(n) for j in range(i + 1, n)) if n > 1 else mp.mpf(0)
            ratio = float(defect / scale)
            if ratio > config.VARIATIONAL_CONFIG.get("asymmetry_tol", 1e-8):
                raise AssemblyError(ratio)
        return (h + h.T) / 2


class OscillatorBasis(NonorthogonalBasis):
    """φ_j = x^{s+2j} exp(b x²/4 - x⁴/4)。"""
    model = ModelTag.SEXTIC
    coupling = Observable.X2
    observables = (Observable.X2, Observable.X4)

    def action(self, j: int) -> BasisAction:
        return sextic_H_action(j, self.params)

    def order(self, k: int, l: int) -> float:
        return 2 * self.params.s + 2 * k + 2 * l

    def shift(self, observable: Observable) -> int:
        return {Observable.X2: 2, Observable.X4: 4}[observable]

    def moment_accessor(self, b: float) -> Callable[[float], object]:
        table = precise_sextic_moments(b, 4 * self.capacity + 8)

        def moment(m: float):
            idx = int(m) // 2
            if idx < 0 or idx >= len(table):
                raise TableExtensionError(m, 2 * (len(table) - 1))
            return table[idx]

        return moment


class CoulombBasis(NonorthogonalBasis):
    """φ_j = r^{γ+1+j} exp(b r/2 - r²/2)；矩量表从 m₀ = 2γ 开始（H 会用到 φ_{-1}）。"""
    model = ModelTag.COULOMB
    coupling = Observable.INV_R
    observables = (Observable.R, Observable.INV_R)

    def action(self, j: int) -> BasisAction:
        return coulomb_H_action(j, self.params)

    def order(self, k: int, l: int) -> float:
        return 2.0 * self.params.gamma + 2 + k + l

    def shift(self, observable: Observable) -> int:
        return {Observable.R: 1, Observable.INV_R: -1}[observable]

    def moment_accessor(self, b: float) -> Callable[[float], object]:
        m0 = 2.0 * self.params.gamma
        table = precise_coulomb_moments(m0, b, 2 * self.capacity + 6)

        def moment(m: float):
            idx = int(round(m - m0))
            if idx < 0 or idx >= len(table):
                raise TableExtensionError(m, m0 + len(table) - 1)
            return table[idx]

        return moment


def basis_for(params: Params, size: int) -> NonorthogonalBasis:
    if isinstance(params, SexticParams):
        return OscillatorBasis(params, size)
    return CoulombBasis(params, size)


def to_numpy(matrix) -> np.ndarray:
    return np.array(matrix.tolist(), dtype=float)


# ===================================================================
# 对外的矩阵接口（双精度结果）
# ===================================================================

def gram_matrix(spec: VariationalSpec) -> np.ndarray:
    """S_kj；条件数超过阈值时抛出 ConditioningError（带最大安全 N）。"""
    basis = basis_for(spec.params, spec.basis_size)
    with precise_context():
        s = basis.gram()
        cholesky_reduction(s, spec.condition_threshold, strict=True)
        return to_numpy(s)


def hamiltonian_matrix(spec: VariationalSpec) -> np.ndarray:
    basis = basis_for(spec.params, spec.basis_size)
    with precise_context():
        return to_numpy(basis.hamiltonian())
