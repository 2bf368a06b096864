"""
谱与积分参考值

扰动三对角矩阵的特征值、Szegő 极限及方差积分的数值求积。
"""

import logging
import math

import numpy as np
import scipy.integrate
import scipy.linalg

from ..bounds.closed_form import stable_log_growth
from ..errors import DomainError, NumericalFailure
from .covariance import inverse_tridiagonal

logger = logging.getLogger(__name__)

_QUAD_LIMIT = 500
# s = log x 超过该值时 log lambda2 ≈ s + log1p((1 + a0^2) e^{-s})，且 x^2 仍不溢出
_TAIL_LOG_SWITCH = 300.0


def perturbed_tridiag_eigenvalues(a0: float, dim: int) -> list[float]:
    """
    sigma^2 R̄^{-1} + a0^2 eta eta^T 的特征值，升序

    a0^2 + 1 - 2|a0| cos(k pi / (dim + 1))，k = 1..dim。
    """
    if not abs(a0) > 1.0:
        raise DomainError(f"扰动三对角特征值要求 |a0| > 1: a0={a0}")
    if dim < 1:
        raise DomainError(f"dim 必须 ≥ 1: dim={dim}")
    k = np.arange(1, dim + 1)
    values = a0 * a0 + 1.0 - 2.0 * abs(a0) * np.cos(k * math.pi / (dim + 1))
    return sorted(float(v) for v in values)


def perturbed_tridiag_matrix(a0: float, dim: int) -> np.ndarray:
    """组装 sigma^2 R̄^{-1} + a0^2 eta eta^T，eta 为最后一个单位向量"""
    matrix = inverse_tridiagonal(a0, dim)
    matrix[-1, -1] += a0 * a0
    return matrix


def numerical_eigenvalues(matrix: np.ndarray) -> list[float]:
    """对称矩阵特征值（升序）"""
    return [float(v) for v in scipy.linalg.eigvalsh(matrix)]


def szego_log_factor(a0: float, eps: float) -> float:
    """log(S + sqrt(S^2 - a0^2))，平稳主子式之商的极限的对数"""
    if not abs(a0) < 1.0:
        raise DomainError(f"Szegő 极限要求 |a0| < 1: a0={a0}")
    if not eps >= 0.0:
        raise DomainError(f"eps 必须非负: eps={eps}")
    return stable_log_growth(a0, eps)


def _quad(integrand, lower: float, upper: float, **kwargs) -> float:
    value, abserr = scipy.integrate.quad(
        integrand, lower, upper, epsabs=1e-14, epsrel=1e-12, limit=_QUAD_LIMIT, **kwargs
    )
    if not math.isfinite(value):
        raise NumericalFailure(f"数值积分失败: [{lower}, {upper}]")
    logger.debug(f"quad [{lower}, {upper}] = {value:.6e} ± {abserr:.1e}")
    return float(value)


def szego_quadrature(a0: float, eps: float) -> float:
    """
    (1/pi) ∫_0^pi log(1 + eps^2 / |e^{jw} - a0|^2) dw

    |e^{jw} - a0|^2 写成 (1 - a0)^2 + 4 a0 sin^2(w/2)（a0 ≥ 0）
    或 (1 + a0)^2 - 4 a0 cos^2(w/2)（a0 < 0），|a0| 接近 1 时无相消。
    """
    if not abs(a0) < 1.0:
        raise DomainError(f"Szegő 积分要求 |a0| < 1: a0={a0}")
    e2 = eps * eps

    def integrand(w: float) -> float:
        if a0 >= 0.0:
            half = math.sin(0.5 * w)
            distance = (1.0 - a0) ** 2 + 4.0 * a0 * half * half
        else:
            half = math.cos(0.5 * w)
            distance = (1.0 + a0) ** 2 - 4.0 * a0 * half * half
        return math.log1p(e2 / distance)

    # 峰值位于 w = 0（a0 ≥ 0）或 w = pi（a0 < 0），宽度约 1 - |a0|
    width = 1.0 - abs(a0)
    offsets = (width, 4.0 * width)
    points = sorted(d if a0 >= 0.0 else math.pi - d for d in offsets if d < math.pi)
    return _quad(integrand, 0.0, math.pi, points=points or None) / math.pi


def variance_integral_quadrature(
    a0: float, n_samples: int, *, include_first_factor: bool = False
) -> float:
    """
    2 ∫_0^∞ lambda2(x)^{-(N-2)/4} dx，x = eps^2

    该积分等于 8/(N-6) - 8 a0^2/(N+2)。include_first_factor=True 时被积函数改为
    完整偏差界（含 ((1 - a0^2)/(1 - a0^2 + x))^{1/4}），其积分不超过上述闭式值。
    区间拆为 [0, 1] 与 x = e^s 代换后的 [0, ∞)。
    """
    if not abs(a0) < 1.0:
        raise DomainError(f"方差积分要求 |a0| < 1: a0={a0}")
    if n_samples < 7:
        raise DomainError(f"方差界要求 N ≥ 7: N={n_samples}")

    exponent = 0.25 * (n_samples - 2)
    log_one_minus_a2 = math.log1p(-a0 * a0)

    def log_lambda2(x: float, log_x: float) -> float:
        if log_x > _TAIL_LOG_SWITCH:
            return log_x + math.log1p((1.0 + a0 * a0) * math.exp(-log_x))
        return stable_log_growth(a0, math.sqrt(x))

    def log_first(x: float, log_x: float) -> float:
        if not include_first_factor:
            return 0.0
        if log_x > _TAIL_LOG_SWITCH:
            return -0.25 * (log_x - log_one_minus_a2)
        return -0.25 * math.log1p(x / (1.0 - a0 * a0))

    def head(x: float) -> float:
        log_x = math.log(x) if x > 0.0 else -math.inf
        return math.exp(log_first(x, log_x) - exponent * log_lambda2(x, log_x))

    def tail(s: float) -> float:
        x = math.exp(s) if s <= _TAIL_LOG_SWITCH else math.inf
        return math.exp(s + log_first(x, s) - exponent * log_lambda2(x, s))

    # 被积函数在 0 附近按 exp(-N x / (4 (1 - a0^2))) 衰减
    scale = 4.0 * (1.0 - a0 * a0) / (n_samples - 2)
    points = [p for p in (scale, 8.0 * scale) if p < 1.0]
    total = _quad(head, 0.0, 1.0, points=points or None) + _quad(tail, 0.0, math.inf)
    return 2.0 * total
