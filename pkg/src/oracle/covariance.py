"""
协方差矩阵构造

平稳区间：r_ij = sigma^2 a0^{|i-j|} / (1 - a0^2)
不稳定区间（y_0 = 0）：r_ij = sigma^2 a0^{|i-j|} (a0^{2 min(i,j)} - 1) / (a0^2 - 1)，i, j 从 1 开始
"""

import logging
import math

import numpy as np

from ..errors import DomainError, RegimeMismatch, SampleOverflow
from .models import CovarianceKind, CovarianceMatrix

logger = logging.getLogger(__name__)


def _check_kind(kind: CovarianceKind, a0: float) -> None:
    if kind is CovarianceKind.STATIONARY_TOEPLITZ and not abs(a0) < 1.0:
        raise RegimeMismatch(f"平稳 Toeplitz 协方差要求 |a0| < 1: a0={a0}")
    if kind is CovarianceKind.UNSTABLE_ZERO_INIT and not abs(a0) > 1.0:
        raise RegimeMismatch(f"零初值协方差要求 |a0| > 1: a0={a0}")


def log_max_variance(kind: CovarianceKind, a0: float, dim: int) -> float:
    """sigma = 1 时最大对角元的对数，不构造矩阵"""
    a2 = a0 * a0
    if kind is CovarianceKind.STATIONARY_TOEPLITZ:
        return -math.log1p(-a2)
    log_a2 = math.log(a2)
    # (a0^{2 dim} - 1) / (a0^2 - 1)，大 dim 时取对数
    if dim * log_a2 > 700.0:
        return dim * log_a2 - math.log(a2 - 1.0)
    return math.log(math.expm1(dim * log_a2) / math.expm1(log_a2))


def build_covariance(
    kind: CovarianceKind, a0: float, sigma: float, dim: int
) -> CovarianceMatrix:
    """
    构造 (y_1, ..., y_dim) 的协方差矩阵

    Args:
        kind: 协方差结构
        a0: 真实 AR 系数
        sigma: 噪声标准差（> 0）
        dim: 矩阵阶数（≥ 1）

    Raises:
        DomainError: dim < 1 或 sigma ≤ 0
        RegimeMismatch: a0 与结构不一致
        SampleOverflow: 不稳定区间元素超出浮点范围
    """
    if dim < 1:
        raise DomainError(f"dim 必须 ≥ 1: dim={dim}")
    if not sigma > 0.0:
        raise DomainError(f"sigma 必须 > 0: sigma={sigma}")
    _check_kind(kind, a0)

    if log_max_variance(kind, a0, dim) + 2.0 * math.log(sigma) > 709.0:
        raise SampleOverflow(f"协方差元素超出浮点范围: a0={a0}, dim={dim}")

    index = np.arange(1, dim + 1)
    lag = np.abs(index[:, np.newaxis] - index[np.newaxis, :])
    s2 = sigma * sigma
    with np.errstate(over="ignore", invalid="ignore"):
        decay = np.power(a0, lag.astype(np.float64))
        if kind is CovarianceKind.STATIONARY_TOEPLITZ:
            entries = s2 * decay / (1.0 - a0 * a0)
        else:
            first = np.minimum(index[:, np.newaxis], index[np.newaxis, :])
            log_a2 = math.log(a0 * a0)
            growth = np.expm1(first * log_a2) / math.expm1(log_a2)
            entries = s2 * decay * growth
    if not np.all(np.isfinite(entries)):
        raise SampleOverflow(f"协方差元素超出浮点范围: a0={a0}, dim={dim}")

    return CovarianceMatrix(entries=entries, kind=kind, a0=a0, sigma=sigma)


def whitening_operator(kind: CovarianceKind, a0: float, dim: int) -> np.ndarray:
    """
    白化算子 W，使 W y / sigma 为标准正态向量

    第一行：平稳区间 sqrt(1 - a0^2)，零初值区间 1；其余行 z_t = y_t - a0 y_{t-1}。
    因而 Cov / sigma^2 = W^{-1} W^{-T}。
    """
    if dim < 1:
        raise DomainError(f"dim 必须 ≥ 1: dim={dim}")
    _check_kind(kind, a0)
    operator = np.eye(dim)
    if kind is CovarianceKind.STATIONARY_TOEPLITZ:
        operator[0, 0] = math.sqrt(1.0 - a0 * a0)
    if dim > 1:
        operator += np.diag(np.full(dim - 1, -a0), k=-1)
    return operator


def inverse_tridiagonal(a0: float, dim: int) -> np.ndarray:
    """
    sigma^2 R̄^{-1}：三对角 {-a0, a0^2 + 1, -a0}，最后一个对角元为 1

    等价于 T̄ - a0^2 eta eta^T。
    """
    if not abs(a0) > 1.0:
        raise DomainError(f"三对角逆矩阵要求 |a0| > 1: a0={a0}")
    if dim < 1:
        raise DomainError(f"dim 必须 ≥ 1: dim={dim}")
    diagonal = np.full(dim, a0 * a0 + 1.0)
    diagonal[-1] = 1.0
    matrix = np.diag(diagonal)
    if dim > 1:
        off = np.full(dim - 1, -a0)
        matrix += np.diag(off, k=1) + np.diag(off, k=-1)
    return matrix


def inverse_identity_residual(a0: float, sigma: float, dim: int) -> float:
    """
    R̄ M / sigma^2 - I 的逐元素缩放残差

    max_ij |R̄ M / sigma^2 - I|_ij / max(1, (|R̄| |M| / sigma^2)_ij)。
    行尺度不超过 1 时与原始最大绝对残差一致；元素按 |a0|^{2 dim} 增长时仍只反映舍入误差。
    """
    if not abs(a0) > 1.0:
        raise DomainError(f"逆矩阵恒等式要求 |a0| > 1: a0={a0}")
    if dim < 2:
        raise DomainError(f"dim 必须 ≥ 2: dim={dim}")

    cov = build_covariance(CovarianceKind.UNSTABLE_ZERO_INIT, a0, sigma, dim)
    normalized = cov.normalized()
    inverse = inverse_tridiagonal(a0, dim)
    product = normalized @ inverse
    magnitude = np.abs(normalized) @ np.abs(inverse)
    residual = np.abs(product - np.eye(dim)) / np.maximum(magnitude, 1.0)
    return float(np.max(residual))
