"""
Experiment Data Models
"""

import math

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..process.models import UINT64_MAX


def _strictly_increasing(values: tuple, name: str) -> tuple:
    if not values:
        raise ValueError(f"{name} 不能为空")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError(f"{name} 必须严格递增: {values}")
    return values


class SweepSpec(BaseModel):
    """(a0, eps, N) 网格扫描的描述"""

    model_config = ConfigDict(frozen=True)

    a0_list: tuple[float, ...] = Field(..., description="真实 AR 系数，|a0| ≠ 1")
    eps_list: tuple[float, ...] = Field(..., description="偏差阈值")
    n_list: tuple[int, ...] = Field(..., description="样本数")
    runs: int = Field(..., ge=1, description="每个 (a0, N) 单元的运行次数")
    base_seed: int = Field(default=0, ge=0, le=UINT64_MAX, description="基础种子")
    sigma: float = Field(default=1.0, gt=0.0, description="噪声标准差")
    output_path: str = Field(..., min_length=1, description="CSV 输出路径")

    @field_validator("a0_list")
    @classmethod
    def validate_a0_list(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        """每个 a0 有限且 |a0| ≠ 1"""
        for a0 in v:
            if not math.isfinite(a0) or abs(a0) == 1.0:
                raise ValueError(f"a0 必须有限且 |a0| ≠ 1: {a0}")
        return _strictly_increasing(v, "a0_list")

    @field_validator("eps_list")
    @classmethod
    def validate_eps_list(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        """非负有限"""
        if any(not (math.isfinite(e) and e >= 0.0) for e in v):
            raise ValueError(f"eps 必须为非负有限值: {v}")
        return _strictly_increasing(v, "eps_list")

    @field_validator("n_list")
    @classmethod
    def validate_n_list(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """N ≥ 2"""
        if any(n < 2 for n in v):
            raise ValueError(f"N 必须 ≥ 2: {v}")
        return _strictly_increasing(v, "n_list")

    @property
    def cells(self) -> int:
        """CSV 数据行数"""
        return len(self.a0_list) * len(self.eps_list) * len(self.n_list)
