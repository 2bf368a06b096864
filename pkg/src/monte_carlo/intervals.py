"""
置信区间

比例用 Wilson score 区间（概率接近 0 时仍不越界），方差用正态近似区间。
"""

import math

from scipy.stats import norm

CONFIDENCE = 0.95


def z_score(confidence: float = CONFIDENCE) -> float:
    """双侧区间的标准正态分位数"""
    return float(norm.ppf(0.5 + 0.5 * confidence))


def wilson_interval(
    successes: int, trials: int, confidence: float = CONFIDENCE
) -> tuple[float, float]:
    """
    二项比例的 Wilson score 区间

    Returns:
        (lower, upper)，位于 [0, 1] 且包含 successes / trials；trials = 0 时为 (0, 1)
    """
    if trials == 0:
        return 0.0, 1.0

    z = z_score(confidence)
    p_hat = successes / trials
    z2_n = z * z / trials
    denominator = 1.0 + z2_n
    center = (p_hat + 0.5 * z2_n) / denominator
    margin = (z / denominator) * math.sqrt(p_hat * (1.0 - p_hat) / trials + 0.25 * z2_n / trials)

    lower = min(max(0.0, center - margin), p_hat)
    upper = max(min(1.0, center + margin), p_hat)
    return lower, upper


def proportion_std_err(successes: int, trials: int) -> float:
    """sqrt(p (1 - p) / n)"""
    if trials == 0:
        return 0.0
    p_hat = successes / trials
    return math.sqrt(p_hat * (1.0 - p_hat) / trials)


def normal_interval(
    value: float, std_err: float, confidence: float = CONFIDENCE, floor: float = 0.0
) -> tuple[float, float]:
    """value ± z std_err，下限截断到 floor"""
    half = z_score(confidence) * std_err
    return max(floor, value - half), value + half
