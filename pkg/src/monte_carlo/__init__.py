"""
Monte Carlo - 可复现的并行经验概率与经验方差估计
"""

from .intervals import normal_interval, proportion_std_err, wilson_interval, z_score
from .models import McConfig, McEstimate, Statistic, Tail
from .runner import (
    collect_deviations,
    deviation_probs_from,
    estimate_deviation_probs,
    estimate_variance,
    variance_from,
)

__all__ = [
    # Models
    "McConfig",
    "McEstimate",
    "Statistic",
    "Tail",
    # Intervals
    "wilson_interval",
    "proportion_std_err",
    "normal_interval",
    "z_score",
    # Runner
    "collect_deviations",
    "deviation_probs_from",
    "variance_from",
    "estimate_deviation_probs",
    "estimate_variance",
]
