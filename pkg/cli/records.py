# cli/records.py
from __future__ import annotations

import math
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer, model_validator


class Provenance(str, Enum):
    TRUNCATION = 'truncation'
    VARIATIONAL = 'variational'


def _json_float(value: Optional[float]) -> Optional[float]:
    # JSON 没有 nan/inf，写成 null
    if value is None or not math.isfinite(value):
        return None
    return value


class SweepRecord(BaseModel):
    """扫描输出的一行：红线（variational）或蓝点（truncation）。"""
    model_config = ConfigDict(frozen=True)

    model: str
    param: str
    value: float
    fixed: Dict[str, float] = Field(default_factory=dict)
    nu: int = Field(ge=0)
    sector: float
    energy: float
    provenance: Provenance
    status: str = "ok"
    convergence: Optional[float] = None
    # 截断点的阶数 n；红线为 None
    order: Optional[int] = None

    @property
    def converged(self) -> bool:
        return self.status == "ok"

    @property
    def converged_field(self) -> str:
        """CSV 的 converged 列：true / false，或失败类型。"""
        if self.status == "ok":
            return "true"
        if self.status == "unconverged":
            return "false"
        return self.status

    @field_serializer('energy', 'convergence')
    def serialize_float(self, v: Optional[float]) -> Optional[float]:
        return _json_float(v)


class ThresholdResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: str
    param: str
    level: int = Field(ge=0)
    sector: Optional[float] = None
    full_line: bool = False
    fixed: Dict[str, float] = Field(default_factory=dict)
    bracket: Tuple[float, float]
    root: float
    residual: float

    @model_validator(mode='after')
    def check_bracket(self) -> 'ThresholdResult':
        lo, hi = self.bracket
        if not lo <= self.root <= hi:
            raise ValueError(f"根 {self.root} 不在区间 [{lo}, {hi}] 内")
        return self


class ExactRow(BaseModel):
    """一个截断解的一个根。"""
    model_config = ConfigDict(frozen=True)

    model: str
    n: int
    sector: float
    b: float
    a: float
    energy: float
    root_index: int
    nodes: int
    full_line_nodes: Optional[int] = None
    level: int
    residual: float
    coefficients: List[float]


class MomentRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: float
    value: Optional[float]
    err_estimate: Optional[float]
    status: str = "ok"

    @field_serializer('value', 'err_estimate')
    def serialize_float(self, v: Optional[float]) -> Optional[float]:
        return _json_float(v)


class CheckItem(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    detail: str = ""
    value: Optional[float] = None

    @field_serializer('value')
    def serialize_float(self, v: Optional[float]) -> Optional[float]:
        return _json_float(v)


class CheckReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    suite: str
    passed: bool
    items: List[CheckItem]

    @classmethod
    def from_items(cls, suite: str, items: List[CheckItem]) -> 'CheckReport':
        return cls(suite=suite, passed=all(i.passed for i in items), items=items)
