# models/action.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple


@dataclass(frozen=True)
class BasisAction:
    """
    哈密顿量作用在单个基函数上的展开：H φ_j = Σ_k coefficients[k] · φ_{j+offsets[k]}。
    振子的偏移为 (-1, 0, +1)，库仑模型为 (-2, -1, 0)。
    """
    offsets: Tuple[int, int, int]
    coefficients: Tuple[float, float, float]

    def coefficient(self, offset: int) -> float:
        for o, t in zip(self.offsets, self.coefficients):
            if o == offset:
                return t
        return 0.0

    @property
    def t_minus(self) -> float:
        return self.coefficient(-1)

    @property
    def t_zero(self) -> float:
        return self.coefficient(0)

    @property
    def t_plus(self) -> float:
        return self.coefficient(1)


def matched_next_coefficient(
        action: Callable[[int], BasisAction],
        j: int,
        energy: float,
        c_j: float,
        c_jm1: float,
) -> float:
    """
    由 Hψ = Eψ 逐项匹配得到 c_{j+1}。
    匹配的是 c_{j+1} 出现时最低的那个基函数 φ_m，m = j+1+offsets[0]。
    """
    lowest = action(j + 1).offsets[0]
    m = j + 1 + lowest
    if m not in (j, j - 1):
        raise ValueError(f"偏移 {lowest} 不构成三项递推。")

    def coef(p: int) -> float:
        return action(p).coefficient(m - p) if p >= 0 else 0.0

    known = {j: c_j, j - 1: c_jm1}
    rhs = energy * known[m] - coef(j) * c_j - coef(j - 1) * c_jm1
    return rhs / coef(j + 1)
