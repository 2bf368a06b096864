"""
对数域算术

含 lambda^N、|a0|^{cN} 的表达式一律在对数域求值。
"""

import math
from typing import NamedTuple

from ..errors import SampleOverflow

LOG_ZERO = float("-inf")
LOG_ONE = 0.0

# exp 在 float64 中可表示的上限
_MAX_LOG = math.log(1.7976931348623157e308)


def safe_log(x: float) -> float:
    """log，0 映射为 -inf"""
    if x == 0.0:
        return LOG_ZERO
    return math.log(x)


def log_add(log_a: float, log_b: float) -> float:
    """log(exp(a) + exp(b))"""
    if log_a < log_b:
        log_a, log_b = log_b, log_a
    if log_b == LOG_ZERO:
        return log_a
    return log_a + math.log1p(math.exp(log_b - log_a))


def log_sub(log_a: float, log_b: float) -> float:
    """log(exp(a) - exp(b))，要求 a ≥ b"""
    if log_a < log_b:
        raise ValueError(f"log_sub 要求 a ≥ b: a={log_a}, b={log_b}")
    if log_b == LOG_ZERO:
        return log_a
    if log_a == log_b:
        return LOG_ZERO
    return log_a + math.log1p(-math.exp(log_b - log_a))


def log_sum(values: list[float]) -> float:
    """log(sum exp(x))，fsum 累加保证与顺序无关"""
    if not values:
        return LOG_ZERO
    maximum = max(values)
    if math.isinf(maximum):
        return maximum
    total = math.fsum(math.expm1(x - maximum) for x in values)
    return maximum + math.log1p(total + float(len(values) - 1))


def exp_checked(log_value: float) -> float:
    """
    exp，下溢返回 0.0

    Raises:
        SampleOverflow: 结果超出浮点范围
    """
    if log_value > _MAX_LOG:
        raise SampleOverflow(f"exp({log_value}) 超出浮点范围")
    return math.exp(log_value)


class SignedLog(NamedTuple):
    """带符号的对数表示 value = sign * exp(log_abs)"""

    sign: float
    log_abs: float

    def to_float(self) -> float:
        """转回浮点数，超出范围时抛出 SampleOverflow"""
        if self.sign == 0.0:
            return 0.0
        return self.sign * exp_checked(self.log_abs)


def signed_log_difference(log_a: float, log_b: float) -> SignedLog:
    """exp(a) - exp(b) 的带符号对数"""
    if log_a >= log_b:
        log_abs = log_sub(log_a, log_b)
        return SignedLog(0.0 if log_abs == LOG_ZERO else 1.0, log_abs)
    return SignedLog(-1.0, log_sub(log_b, log_a))
