# ttrr/polynomial.py
from __future__ import annotations

from typing import Any

import numpy as np
from numpy.polynomial import Polynomial

from ttrr.recurrence import RecurrenceModel


def truncation_polynomial(model: RecurrenceModel, params: Any, n: int) -> Polynomial:
    """把递推直接作用在 λ 的多项式上，得到 c_{n+1}(λ)（次数 n+1）。"""
    prev = Polynomial([0.0])
    cur = Polynomial([1.0])
    for j in range(n + 1):
        slope, intercept = model.a_affine(j, params)
        a_j = Polynomial([intercept, slope])
        prev, cur = cur, a_j * cur + model.b_coefficient(j, params) * prev
    return cur


def polynomial_roots(model: RecurrenceModel, params: Any, n: int, imag_tol: float = 1e-7) -> np.ndarray:
    """
    c_{n+1}(λ) 的伴随矩阵根，只保留实根，升序。
    仅作为三对角路线的独立对照。
    """
    roots = truncation_polynomial(model, params, n).roots()
    real = roots[np.abs(roots.imag) <= imag_tol * (1.0 + np.abs(roots.real))].real
    return np.sort(real)
