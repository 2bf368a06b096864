"""
AR(1) 轨迹生成

y_t = a0 y_{t-1} + sigma z_t, z_t 为 GaussianStream 产生的标准正态数。
噪声先以单位方差生成再乘 sigma，因此同一种子下 sigma 与 2 sigma 的轨迹恰好相差 2 倍。
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
from scipy.signal import lfilter

from ..errors import DomainError, RegimeMismatch, SampleOverflow
from .models import Ar1Params, Regime, Trajectory
from .rng import GaussianStream

logger = logging.getLogger(__name__)


def check_regime(params: Ar1Params) -> None:
    """a0 必须落在声明的区间内"""
    if not params.regime.admits(params.a0):
        raise RegimeMismatch(f"a0={params.a0} 与区间 {params.regime.value} 不一致")


def _check_length(n_samples: int) -> None:
    if n_samples < 2:
        raise DomainError(f"N 必须 ≥ 2: N={n_samples}")


def _propagate(a0: float, driven: np.ndarray) -> np.ndarray:
    """
    沿最后一维执行递推 y_t = a0 y_{t-1} + driven_t（y_0 = 0）

    Raises:
        SampleOverflow: 任一 |y_t| 超出浮点范围
    """
    with np.errstate(over="ignore", invalid="ignore"):
        y = lfilter([1.0], [1.0, -a0], driven, axis=-1)
    if not np.all(np.isfinite(y)):
        raise SampleOverflow(f"|y_t| 超出浮点范围: a0={a0}, N={driven.shape[-1]}")
    return y


def _driving_terms(
    params: Ar1Params, n_samples: int, seeds: Sequence[int], initial_value: float | None
) -> np.ndarray:
    """把单位正态噪声换算成递推的驱动项，第一列即 y_1"""
    driven = np.empty((len(seeds), n_samples), dtype=np.float64)
    for row, seed in enumerate(seeds):
        driven[row] = GaussianStream(seed).normals(n_samples)
    driven *= params.sigma

    if initial_value is not None:
        driven[:, 0] = initial_value
    elif params.regime is Regime.STABLE_STATIONARY:
        driven[:, 0] /= math.sqrt(1.0 - params.a0 * params.a0)
    return driven


def simulate_batch(
    params: Ar1Params,
    n_samples: int,
    seeds: Sequence[int],
    initial_value: float | None = None,
) -> np.ndarray:
    """
    批量生成轨迹，每行对应一个种子

    Args:
        params: 过程参数（params.seed 被忽略）
        n_samples: 每条轨迹的长度 N
        seeds: 每条轨迹的种子
        initial_value: 显式 y_1（零噪声测试钩子），None 表示按区间初始化

    Returns:
        形状 (len(seeds), N) 的数组
    """
    _check_length(n_samples)
    check_regime(params)
    if initial_value is None and params.regime is Regime.STABLE_STATIONARY and params.sigma == 0:
        raise DomainError("平稳初始化要求 sigma > 0；零噪声请使用显式 y_1")
    if initial_value is not None and not math.isfinite(initial_value):
        raise DomainError(f"y_1 必须为有限值: {initial_value}")

    driven = _driving_terms(params, n_samples, seeds, initial_value)
    return _propagate(params.a0, driven)


def simulate(params: Ar1Params, n_samples: int) -> Trajectory:
    """
    生成一条 AR(1) 轨迹

    平稳区间 y_1 ~ N(0, sigma^2 / (1 - a0^2))；不稳定区间 y_0 = 0，因此 y_1 = e_1。

    Args:
        params: 过程参数
        n_samples: 样本数 N ≥ 2

    Returns:
        Trajectory: 由 (params, N) 唯一确定的轨迹
    """
    samples = simulate_batch(params, n_samples, [params.seed])[0]
    return Trajectory(samples=tuple(samples.tolist()), params=params, n_samples=n_samples)


def simulate_from_initial(params: Ar1Params, n_samples: int, y1: float) -> Trajectory:
    """
    零噪声测试钩子：以给定的 y_1 开始递推

    sigma = 0 时得到确定的几何序列 y_t = a0^{t-1} y_1。
    """
    samples = simulate_batch(params, n_samples, [params.seed], initial_value=y1)[0]
    return Trajectory(samples=tuple(samples.tolist()), params=params, n_samples=n_samples)
