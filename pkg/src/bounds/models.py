"""
Bound Data Models

偏差概率界和方差界的查询与结果结构。
"""

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class BoundKind(str, Enum):
    """界的种类"""

    STABLE_DEVIATION = "stable_deviation"
    UNSTABLE_DEVIATION = "unstable_deviation"
    RELAXED_UNSTABLE_DEVIATION = "relaxed_unstable_deviation"
    DETERMINANT_DEVIATION = "determinant_deviation"
    STABLE_VARIANCE = "stable_variance"
    UNSTABLE_VARIANCE = "unstable_variance"
    CRAMER_RAO_ASYMPTOTIC = "cramer_rao_asymptotic"

    @property
    def is_deviation(self) -> bool:
        """是否为概率界"""
        return self in (
            BoundKind.STABLE_DEVIATION,
            BoundKind.UNSTABLE_DEVIATION,
            BoundKind.RELAXED_UNSTABLE_DEVIATION,
            BoundKind.DETERMINANT_DEVIATION,
        )


class Provenance(str, Enum):
    """数值来源"""

    CLOSED_FORM = "closed_form"
    DETERMINANT_EXACT = "determinant_exact"
    RELAXED = "relaxed"
    REFERENCE = "reference"


class DeviationQuery(BaseModel):
    """(a0, eps, N) 查询"""

    model_config = ConfigDict(frozen=True)

    a0: float = Field(..., description="真实 AR 系数")
    eps: float = Field(..., ge=0.0, description="偏差阈值 epsilon")
    n_samples: int = Field(..., ge=2, description="样本数 N")

    @field_validator("a0", "eps")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        """拒绝 NaN / inf"""
        if not math.isfinite(v):
            raise ValueError(f"参数必须为有限值: {v}")
        return v


class RootPair(BaseModel):
    """
    lambda^2 - (1 + a0^2 + eps^2) lambda + a0^2 = 0 的两个根

    间隙量按无相消的方式给出，满足 (1 - lambda1)(lambda2 - 1) = eps^2。
    """

    model_config = ConfigDict(frozen=True)

    lambda1: float = Field(..., gt=0.0, description="较小根")
    lambda2: float = Field(..., gt=0.0, description="较大根")
    one_minus_lambda1: float = Field(..., description="1 - lambda1")
    lambda2_minus_one: float = Field(..., description="lambda2 - 1")
    gap: float = Field(..., ge=0.0, description="lambda2 - lambda1")

    @model_validator(mode="after")
    def validate_order(self) -> "RootPair":
        """0 < lambda1 ≤ lambda2"""
        if self.lambda1 > self.lambda2:
            raise ValueError(f"根顺序错误: {self.lambda1} > {self.lambda2}")
        return self


class BoundValue(BaseModel):
    """界的数值及来源"""

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., ge=0.0, description="界的数值，极小时可能下溢为 0")
    log_value: float = Field(..., description="log(value)")
    kind: BoundKind = Field(..., description="界的种类")
    provenance: Provenance = Field(..., description="数值来源")
    a0: float = Field(..., description="真实 AR 系数")
    eps: float | None = Field(None, description="偏差阈值，方差界为 None")
    n_samples: int = Field(..., ge=2, description="样本数 N")

    @model_validator(mode="after")
    def validate_range(self) -> "BoundValue":
        """概率界 ≤ 1，方差界为正"""
        if self.kind.is_deviation:
            if self.log_value > 0.0 or self.value > 1.0:
                raise ValueError(f"概率界必须 ≤ 1: {self.value}")
        elif not (math.isfinite(self.log_value) and math.isfinite(self.value)):
            raise ValueError(f"方差界必须为正的有限值: {self.value}")
        return self
