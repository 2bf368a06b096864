"""
AR(1) Process - 轨迹生成与最小二乘估计

两种初始化：平稳区间精确平稳抽样，不稳定区间 y_0 = 0。
"""

from .estimator import ls_estimate, ls_estimate_batch
from .models import Ar1Params, EstimateResult, Regime, Trajectory
from .rng import GaussianStream, derive_run_seed, splitmix64
from .simulator import check_regime, simulate, simulate_batch, simulate_from_initial

__all__ = [
    # Models
    "Ar1Params",
    "Regime",
    "Trajectory",
    "EstimateResult",
    # RNG
    "GaussianStream",
    "derive_run_seed",
    "splitmix64",
    # Operations
    "check_regime",
    "simulate",
    "simulate_batch",
    "simulate_from_initial",
    "ls_estimate",
    "ls_estimate_batch",
]
