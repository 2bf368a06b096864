"""
Monte Carlo Data Models
"""

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..process.models import UINT64_MAX, Ar1Params


class Statistic(str, Enum):
    """估计量种类"""

    DEVIATION_PROB = "deviation_prob"
    VARIANCE = "variance"


class Tail(str, Enum):
    """偏差事件的方向"""

    UPPER = "upper"  # a_hat - a0 > eps
    LOWER = "lower"  # a_hat - a0 < -eps


class McConfig(BaseModel):
    """一次 Monte Carlo 实验的完整描述，估计结果是它的纯函数"""

    model_config = ConfigDict(frozen=True)

    params: Ar1Params = Field(..., description="过程参数（params.seed 不参与）")
    n_samples: int = Field(..., ge=2, description="样本数 N")
    runs: int = Field(..., ge=1, description="运行次数")
    base_seed: int = Field(default=0, ge=0, le=UINT64_MAX, description="基础种子")
    eps_grid: tuple[float, ...] = Field(default=(), description="严格递增的 eps 网格")
    initial_value: float | None = Field(default=None, description="显式 y_1（零噪声测试钩子）")

    @field_validator("eps_grid")
    @classmethod
    def validate_eps_grid(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        """非负、有限、严格递增"""
        if any(not (math.isfinite(e) and e >= 0.0) for e in v):
            raise ValueError(f"eps 必须为非负有限值: {v}")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError(f"eps 网格必须严格递增: {v}")
        return v

    @property
    def resolution(self) -> float:
        """可分辨的最小概率约为 3/runs"""
        return 3.0 / self.runs


class McEstimate(BaseModel):
    """经验概率或经验方差及其不确定度"""

    model_config = ConfigDict(frozen=True)

    statistic: Statistic = Field(..., description="估计量种类")
    eps: float | None = Field(None, description="偏差阈值，方差为 None")
    tail: Tail | None = Field(None, description="偏差方向，方差为 None")
    value: float = Field(..., description="估计值")
    runs: int = Field(..., ge=0, description="有效运行次数")
    failed_runs: int = Field(default=0, ge=0, description="分母退化的运行次数")
    std_err: float = Field(..., ge=0.0, description="标准误差")
    ci_low: float = Field(..., description="95% 区间下限")
    ci_high: float = Field(..., description="95% 区间上限")
    heavy_tail: bool = Field(default=False, description="N < 7 时方差可能不存在")

    @model_validator(mode="after")
    def validate_range(self) -> "McEstimate":
        """概率在 [0, 1]，方差非负，区间包含估计值"""
        if self.statistic is Statistic.DEVIATION_PROB and not 0.0 <= self.value <= 1.0:
            raise ValueError(f"概率必须在 [0, 1] 内: {self.value}")
        if self.statistic is Statistic.VARIANCE and not self.value >= 0.0:
            raise ValueError(f"方差必须非负: {self.value}")
        if not self.ci_low <= self.value <= self.ci_high:
            raise ValueError(f"置信区间 [{self.ci_low}, {self.ci_high}] 不包含 {self.value}")
        return self
