"""
Oracle Data Models

协方差矩阵、三对角矩阵描述以及对数尺度的行列式序列。
"""

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..bounds.logspace import SignedLog
from ..errors import SampleOverflow


class CovarianceKind(str, Enum):
    """协方差结构"""

    STATIONARY_TOEPLITZ = "stationary_toeplitz"
    UNSTABLE_ZERO_INIT = "unstable_zero_init"

    @classmethod
    def for_a0(cls, a0: float) -> "CovarianceKind":
        """按 |a0| 选择结构"""
        if abs(a0) < 1.0:
            return cls.STATIONARY_TOEPLITZ
        if abs(a0) > 1.0:
            return cls.UNSTABLE_ZERO_INIT
        raise ValueError(f"|a0| = 1 没有对应的协方差结构: a0={a0}")


class CovarianceMatrix(BaseModel):
    """(y_1, ..., y_dim) 的协方差矩阵"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: np.ndarray = Field(..., description="稠密对称矩阵")
    kind: CovarianceKind = Field(..., description="协方差结构")
    a0: float = Field(..., description="真实 AR 系数")
    sigma: float = Field(..., gt=0.0, description="噪声标准差")

    @model_validator(mode="after")
    def validate_entries(self) -> "CovarianceMatrix":
        """方阵、有限、对称"""
        entries = self.entries
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise ValueError(f"协方差必须是非空方阵: shape={entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise ValueError("协方差包含非有限值")
        scale = max(float(np.max(np.abs(entries))), 1.0)
        if float(np.max(np.abs(entries - entries.T))) > 1e-14 * scale:
            raise ValueError("协方差矩阵不对称")
        return self

    @property
    def dim(self) -> int:
        """矩阵阶数"""
        return int(self.entries.shape[0])

    def normalized(self) -> np.ndarray:
        """除以 sigma^2 后的矩阵"""
        return self.entries / (self.sigma * self.sigma)


class TridiagonalSpec(BaseModel):
    """常系数三对角矩阵：次对角 alpha，主对角 beta，超对角 gamma"""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., description="次对角元素")
    beta: float = Field(..., description="主对角元素")
    gamma: float = Field(..., description="超对角元素")
    size: int = Field(..., ge=1, description="阶数")

    @classmethod
    def unstable_family(cls, a0: float, size: int, eps: float = 0.0) -> "TridiagonalSpec":
        """{-a0, a0^2 + 1 + eps^2, -a0}"""
        return cls(alpha=-a0, beta=a0 * a0 + 1.0 + eps * eps, gamma=-a0, size=size)

    def to_dense(self) -> np.ndarray:
        """组装稠密矩阵"""
        n = self.size
        matrix = np.diag(np.full(n, self.beta))
        if n > 1:
            matrix += np.diag(np.full(n - 1, self.alpha), k=-1)
            matrix += np.diag(np.full(n - 1, self.gamma), k=1)
        return matrix


class DeterminantSequence(BaseModel):
    """det(T_1), ..., det(T_n) 的符号与对数绝对值"""

    model_config = ConfigDict(frozen=True)

    signs: tuple[float, ...] = Field(..., description="符号（0 表示行列式为零）")
    log_abs: tuple[float, ...] = Field(..., description="log|det|")

    def __len__(self) -> int:
        return len(self.signs)

    def __getitem__(self, index: int) -> SignedLog:
        return SignedLog(self.signs[index], self.log_abs[index])

    def to_floats(self) -> list[float]:
        """
        转回普通浮点数

        Raises:
            SampleOverflow: 任一行列式超出浮点范围
        """
        try:
            return [self[i].to_float() for i in range(len(self))]
        except SampleOverflow:
            raise SampleOverflow("行列式超出浮点范围，请使用对数表示") from None
