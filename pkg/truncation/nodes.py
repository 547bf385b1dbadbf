# truncation/nodes.py
from __future__ import annotations

from typing import Sequence, Union

import numpy as np
from numpy.polynomial import Polynomial

import config
from models.params import ModelTag
from utility.errors import AmbiguousNodeError


def _real_roots(coefficients: Sequence[float]) -> np.ndarray:
    imag_tol = config.TRUNCATION_CONFIG.get("imag_tolerance", 1e-7)
    coeffs = np.trim_zeros(np.asarray(coefficients, dtype=float), trim="b")
    if coeffs.size <= 1:
        return np.array([])
    roots = Polynomial(coeffs).roots()
    keep = np.abs(roots.imag) < imag_tol * (1.0 + np.abs(roots.real))
    return np.sort(roots[keep].real)


def _sign_changes(roots: np.ndarray) -> np.ndarray:
    """把相距不超过去重容差的根并为一簇，只保留奇重（变号）的簇。"""
    dedup_tol = config.TRUNCATION_CONFIG.get("dedup_tolerance", 1e-9)
    clusters = []
    for r in roots:
        if clusters and abs(r - clusters[-1][-1]) <= dedup_tol * (1.0 + abs(r)):
            clusters[-1].append(r)
        else:
            clusters.append([r])
    return np.array([np.mean(c) for c in clusters if len(c) % 2 == 1])


def positive_nodes(coefficients: Sequence[float]) -> np.ndarray:
    """P 在变量正半轴上的变号根。根离 0 太近时无法判定，抛出 AmbiguousNodeError。"""
    endpoint_tol = config.TRUNCATION_CONFIG.get("endpoint_tolerance", 1e-7)
    roots = _sign_changes(_real_roots(coefficients))
    for r in roots:
        if abs(r) <= endpoint_tol:
            raise AmbiguousNodeError(float(r))
    return roots[roots > 0]


def count_nodes(coefficients: Sequence[float], model: Union[ModelTag, str], s: int = 0) -> int:
    """
    振子：P 以 y=x² 为变量，x>0 上的节点数为 y>0 的变号根个数，再加上 s（原点节点）。
    库仑：P(r) 在 r>0 上的变号根个数。
    """
    coeffs = np.asarray(coefficients, dtype=float)
    if coeffs.size == 0 or coeffs[0] != 1.0:
        raise ValueError("多项式因子必须满足 c_0 = 1。")
    count = positive_nodes(coeffs).size
    if ModelTag(model) is ModelTag.SEXTIC:
        return count + s
    return count


def full_line_nodes(coefficients: Sequence[float], s: int) -> int:
    """振子在整条实轴上的节点数 2i+s。"""
    return 2 * positive_nodes(coefficients).size + s
