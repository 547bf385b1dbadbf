# models/params.py
from __future__ import annotations

import math
from enum import Enum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator


class ModelTag(str, Enum):
    SEXTIC = 'sextic'
    COULOMB = 'coulomb'


class WellClass(str, Enum):
    SINGLE_WELL = 'SingleWell'
    DOUBLE_WELL = 'DoubleWell'
    TRIPLE_WELL = 'TripleWell'


class SexticParams(BaseModel):
    """V(a,b,x) = -a x² - b x⁴ + x⁶，s 为宇称（0 偶，1 奇）。"""
    model_config = ConfigDict(frozen=True)

    a: float = 0.0
    b: float = 0.0
    s: Literal[0, 1] = 0

    @field_validator('a', 'b')
    @classmethod
    def check_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("模型参数必须是有限实数")
        return v

    @property
    def tag(self) -> ModelTag:
        return ModelTag.SEXTIC

    @property
    def sector(self) -> float:
        return float(self.s)


class CoulombParams(BaseModel):
    """V(a,b,r) = -a/r - b r + r²，外加离心项 γ(γ+1)/r²，γ 视为不透明的正实数。"""
    model_config = ConfigDict(frozen=True)

    gamma: float = Field(gt=0)
    a: float = 0.0
    b: float = 0.0

    @field_validator('gamma', 'a', 'b')
    @classmethod
    def check_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("模型参数必须是有限实数")
        return v

    @property
    def tag(self) -> ModelTag:
        return ModelTag.COULOMB

    @property
    def sector(self) -> float:
        return self.gamma
