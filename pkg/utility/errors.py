# utility/errors.py
from __future__ import annotations

from typing import Optional


class QesError(Exception):
    """本项目所有异常的基类。"""


class RecurrenceOverflowError(QesError, ArithmeticError):
    def __init__(self, index: int):
        super().__init__(f"递推在 j={index} 处出现非有限值。")
        self.index = index


class ModelContractError(QesError, ValueError):
    def __init__(self, index: int, message: Optional[str] = None):
        super().__init__(message or f"A_{index} 对谱参数的斜率为零，无法改写为三对角形式。")
        self.index = index


class SymmetrizationError(QesError, ValueError):
    """U_{j+1}/W_j <= 0，参数不在截断流形上。"""

    def __init__(self, index: int, ratio: float):
        super().__init__(f"无法对称化：U_{index}/W_{index - 1} = {ratio:.6g} <= 0。")
        self.index = index
        self.ratio = ratio


class BoundaryCaseError(QesError, ValueError):
    pass


class PotentialDomainError(QesError, ValueError):
    pass


class RootIndexError(QesError, IndexError):
    pass


class AmbiguousNodeError(QesError, ValueError):
    def __init__(self, root: float):
        super().__init__(f"多项式的根 {root:.3e} 过于接近区间端点，节点数不确定。")
        self.root = root


class PrecisionError(QesError, ArithmeticError):
    def __init__(self, achieved: float, message: Optional[str] = None):
        super().__init__(message or f"数值积分未达到精度要求，实际相对误差估计 {achieved:.3e}。")
        self.achieved = achieved


class ConditioningError(QesError, ArithmeticError):
    """Gram 矩阵条件数超出阈值；largest_safe_n 是仍可接受的最大基组。"""

    def __init__(self, condition: float, largest_safe_n: int):
        super().__init__(f"Gram 矩阵条件数 {condition:.3e} 超过阈值，最大安全基组 N={largest_safe_n}。")
        self.condition = condition
        self.largest_safe_n = largest_safe_n


class AssemblyError(QesError, ArithmeticError):
    def __init__(self, defect: float):
        super().__init__(f"哈密顿矩阵非对称缺陷过大: {defect:.3e}。")
        self.defect = defect


class LevelCrossingError(QesError, RuntimeError):
    pass


class BracketError(QesError, ValueError):
    pass


class TableExtensionError(QesError, LookupError):
    def __init__(self, requested: int, available: int):
        super().__init__(f"矩量表不足：需要位移 {requested}，仅有 {available}。")
        self.requested = requested
        self.available = available


class UsageError(QesError, ValueError):
    """命令行参数错误，对应退出码 2。"""
