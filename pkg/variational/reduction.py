# variational/reduction.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict

import numpy as np
from mpmath import mp

import config
from models.params import CoulombParams, ModelTag, SexticParams
from moments.precise import precise_context, working_dps
from variational.basis import Observable, Params, basis_for
from variational.cholesky import CholeskyReduction, cholesky_reduction

logger = logging.getLogger("qes_spectra").getChild("variational")


@dataclass(frozen=True)
class ReducedModel:
    """
    固定 (模型, b, 扇区) 的正交化基中的全部矩阵（双精度）。
    H(a) = h0 + a·da，da = -(x² 或 1/r)；前 n 阶主子块对应 n 个基函数。
    """
    model: ModelTag
    b: float
    sector: float
    reduction: CholeskyReduction = field(compare=False, repr=False)
    h0: np.ndarray = field(compare=False, repr=False)
    da: np.ndarray = field(compare=False, repr=False)
    observables: Dict[Observable, np.ndarray] = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return self.reduction.size

    @property
    def requested(self) -> int:
        return self.reduction.requested

    def condition_at(self, n: int) -> float:
        return self.reduction.condition_at(n)

    def hamiltonian(self, a: float, n: int) -> np.ndarray:
        return self.h0[:n, :n] + a * self.da[:n, :n]

    def observable(self, observable: Observable, n: int) -> np.ndarray:
        if observable not in self.observables:
            raise ValueError(f"观测量 {observable.value} 不属于 {self.model.value} 模型。")
        return self.observables[observable][:n, :n]

    def coefficients(self, vectors: np.ndarray) -> np.ndarray:
        with precise_context():
            return self.reduction.back_transform(vectors)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _base_params(model: ModelTag, b: float, sector: float) -> Params:
    if model is ModelTag.SEXTIC:
        return SexticParams(a=0.0, b=b, s=int(sector))
    return CoulombParams(gamma=sector, a=0.0, b=b)


@lru_cache(maxsize=512)
def _build(model: ModelTag, b: float, sector: float, size: int, threshold: float, dps: int) -> ReducedModel:
    basis = basis_for(_base_params(model, b, sector), size)
    with precise_context(dps):
        reduction = cholesky_reduction(basis.gram(), threshold)
        if reduction.size < size:
            logger.info(
                f"{model.value} b={b:g} 扇区 {sector:g}: 条件数限制基组为 N={reduction.size}"
                f"（请求 {size}）"
            )
        h0 = reduction.reduce(basis.hamiltonian())
        observables = {obs: _frozen(reduction.reduce(basis.observable_matrix(obs))) for obs in basis.observables}
    da = _frozen(-observables[basis.coupling].copy())
    return ReducedModel(
        model=model, b=b, sector=sector, reduction=reduction,
        h0=_frozen(h0), da=da, observables=observables,
    )


def reduced_model(params: Params, size: int, threshold: float = 0.0) -> ReducedModel:
    """
    与 a 无关的约化模型，按 (模型, b, 扇区, 容量, 阈值, 精度) 缓存。
    容量不小于配置中的基组大小，较小的 N 取前 N 阶主子块。
    """
    size = max(int(size), config.VARIATIONAL_CONFIG.get("basis_size", 25))
    threshold = threshold or config.VARIATIONAL_CONFIG.get("condition_threshold", 1e13)
    if isinstance(params, SexticParams):
        key = (ModelTag.SEXTIC, float(params.b), float(params.s))
    else:
        key = (ModelTag.COULOMB, float(params.b), float(params.gamma))
    return _build(*key, size, float(threshold), working_dps())


def mixed_overlap(first: ReducedModel, second: ReducedModel, n: int) -> np.ndarray:
    """
    两组约化基之间的重叠矩阵 T₁ᵀ G(b̄) T₂，G(b̄) 为权重在 b̄=(b₁+b₂)/2 处的 Gram 矩阵。
    同一个约化模型时就是单位阵。
    """
    if first is second or (first == second and first.size == second.size):
        return np.eye(n)
    if first.model is not second.model or first.sector != second.sector:
        raise ValueError("只能比较同一模型、同一扇区的两组基。")
    mean_b = 0.5 * (first.b + second.b)
    basis = basis_for(_base_params(first.model, mean_b, first.sector), n)
    with precise_context():
        g = basis.gram()
        if n > min(first.size, second.size):
            raise ValueError(f"n={n} 超过约化基组大小。")
        t1, t2 = first.reduction.transform, second.reduction.transform
        left = mp.matrix(n, n)
        right = mp.matrix(n, n)
        for i in range(n):
            for j in range(n):
                left[i, j] = t1[i, j]
                right[i, j] = t2[i, j]
        product = left.T * g * right
        return np.array(product.tolist(), dtype=float)


def clear_reduction_cache() -> None:
    _build.cache_clear()
