"""
最小二乘估计

a_hat = sum_{t=2}^{N} y_t y_{t-1} / sum_{t=1}^{N-1} y_t^2

求和前每行按 2 的幂缩放到 [0.5, 1) 量级：比值不变且缩放精确，
不稳定轨迹的平方和因此不会溢出。
"""

import numpy as np

from ..errors import DegenerateDenominator, DomainError
from .models import EstimateResult, Trajectory


def _power_of_two_scale(samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """按行缩放，返回 (缩放后样本, 每行的二进制指数)"""
    peak = np.max(np.abs(samples), axis=-1)
    _, exponent = np.frexp(peak)
    scaled = np.ldexp(samples, -exponent[..., np.newaxis])
    return scaled, exponent


def ls_estimate_batch(samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    对每行轨迹计算最小二乘估计

    Args:
        samples: 形状 (runs, N) 的轨迹

    Returns:
        (a_hat, denominator)：分母为 0 的行 a_hat 为 NaN，分母为原始尺度的平方和
    """
    samples = np.atleast_2d(np.asarray(samples, dtype=np.float64))
    if samples.shape[-1] < 2:
        raise DomainError(f"N 必须 ≥ 2: N={samples.shape[-1]}")

    scaled, exponent = _power_of_two_scale(samples)
    lagged = scaled[:, :-1]
    numerator = np.sum(scaled[:, 1:] * lagged, axis=-1)
    denominator = np.sum(lagged * lagged, axis=-1)

    degenerate = denominator == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        a_hat = np.where(degenerate, np.nan, numerator / np.where(degenerate, 1.0, denominator))
    with np.errstate(over="ignore"):
        raw_denominator = np.ldexp(denominator, 2 * exponent)
    return a_hat, raw_denominator


def ls_estimate(traj: Trajectory) -> EstimateResult:
    """
    计算单条轨迹的最小二乘估计

    Raises:
        DegenerateDenominator: y_1..y_{N-1} 全为零
    """
    a_hat, denominator = ls_estimate_batch(np.asarray(traj.samples)[np.newaxis, :])
    if np.isnan(a_hat[0]):
        raise DegenerateDenominator("y_1..y_{N-1} 全为零，最小二乘分母退化")
    return EstimateResult(
        a_hat=float(a_hat[0]),
        n_samples=traj.n_samples,
        denominator=float(denominator[0]),
    )
