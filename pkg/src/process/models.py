"""
AR(1) Process Data Models

定义模拟和估计过程中使用的数据结构。
"""

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

UINT64_MAX = 2**64 - 1


class Regime(str, Enum):
    """初始化区间"""

    STABLE_STATIONARY = "stable_stationary"
    UNSTABLE_ZERO_INIT = "unstable_zero_init"

    @classmethod
    def for_a0(cls, a0: float) -> "Regime":
        """按 |a0| 推断区间；|a0| = 1 不属于任何区间"""
        if abs(a0) < 1.0:
            return cls.STABLE_STATIONARY
        if abs(a0) > 1.0:
            return cls.UNSTABLE_ZERO_INIT
        raise ValueError(f"|a0| = 1 不属于稳定或不稳定区间: a0={a0}")

    def admits(self, a0: float) -> bool:
        """a0 是否落在本区间内"""
        if self is Regime.STABLE_STATIONARY:
            return abs(a0) < 1.0
        return abs(a0) > 1.0


class Ar1Params(BaseModel):
    """AR(1) 过程参数 y_t = a0 y_{t-1} + e_t, e_t ~ N(0, sigma^2)"""

    model_config = ConfigDict(frozen=True)

    a0: float = Field(..., description="真实 AR 系数")
    sigma: float = Field(..., ge=0.0, description="噪声标准差")
    regime: Regime = Field(..., description="初始化区间")
    seed: int = Field(default=0, ge=0, le=UINT64_MAX, description="64 位无符号种子")

    @field_validator("a0", "sigma")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        """拒绝 NaN / inf"""
        if not math.isfinite(v):
            raise ValueError(f"参数必须为有限值: {v}")
        return v

    def with_seed(self, seed: int) -> "Ar1Params":
        """返回仅替换种子的副本"""
        return self.model_copy(update={"seed": seed})


class Trajectory(BaseModel):
    """一次实现的样本 y_1..y_N"""

    model_config = ConfigDict(frozen=True)

    samples: tuple[float, ...] = Field(..., description="有序样本 y_1..y_N")
    params: Ar1Params = Field(..., description="生成该轨迹的参数")
    n_samples: int = Field(..., ge=2, description="样本数 N")

    @model_validator(mode="after")
    def validate_samples(self) -> "Trajectory":
        """长度与 N 一致且全部有限"""
        if len(self.samples) != self.n_samples:
            raise ValueError(f"样本长度 {len(self.samples)} 与 N={self.n_samples} 不一致")
        if not all(math.isfinite(y) for y in self.samples):
            raise ValueError("轨迹包含非有限值")
        return self


class EstimateResult(BaseModel):
    """最小二乘估计结果"""

    model_config = ConfigDict(frozen=True)

    a_hat: float = Field(..., description="最小二乘估计")
    n_samples: int = Field(..., ge=2, description="样本数 N")
    denominator: float = Field(..., gt=0.0, description="sum_{t=1}^{N-1} y_t^2")
