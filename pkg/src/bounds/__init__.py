"""
Bounds - 最小二乘估计的有限样本偏差概率界与方差界
"""

from .closed_form import (
    DEFAULT_M,
    cramer_rao_asymptote,
    deviation_bound,
    regime_change_margin,
    relaxed_unstable_bound,
    root_gaps,
    stable_deviation_bound,
    stable_log_growth,
    stable_variance_bound,
    unstable_deviation_bound,
    unstable_roots,
    unstable_variance_bound,
    unstable_variance_reassembled,
    variance_bound,
    xstar_zstar,
)
from .logspace import SignedLog, log_add, log_sub, log_sum
from .models import BoundKind, BoundValue, DeviationQuery, Provenance, RootPair

__all__ = [
    # Models
    "DeviationQuery",
    "RootPair",
    "BoundValue",
    "BoundKind",
    "Provenance",
    # Log domain
    "SignedLog",
    "log_add",
    "log_sub",
    "log_sum",
    # Operations
    "DEFAULT_M",
    "root_gaps",
    "unstable_roots",
    "stable_log_growth",
    "stable_deviation_bound",
    "unstable_deviation_bound",
    "relaxed_unstable_bound",
    "deviation_bound",
    "xstar_zstar",
    "regime_change_margin",
    "stable_variance_bound",
    "unstable_variance_bound",
    "unstable_variance_reassembled",
    "variance_bound",
    "cramer_rao_asymptote",
]
