"""
行列式计算

偏差界的精确行列式形式 det(I + (eps^2/sigma^2) Cov)^{-1/4}、三对角行列式递推、
连分式（continuant）恒等式两侧，以及平稳 Toeplitz 主子式商。
"""

import logging
import math
from typing import Literal

import numpy as np
import scipy.linalg

from ..bounds.closed_form import root_gaps
from ..bounds.logspace import (
    LOG_ONE,
    LOG_ZERO,
    SignedLog,
    exp_checked,
    log_add,
    log_sum,
    safe_log,
    signed_log_difference,
)
from ..bounds.models import BoundKind, BoundValue, DeviationQuery, Provenance
from ..errors import DomainError, NumericalFailure
from .covariance import build_covariance, log_max_variance, whitening_operator
from .models import CovarianceKind, DeterminantSequence, TridiagonalSpec

logger = logging.getLogger(__name__)

DetMethod = Literal["auto", "dense", "whitened"]

# 稠密路径下相对舍入误差的上限估计低于该值时才使用稠密分解
_DENSE_ROUNDING_LIMIT = 1e-11
_UNIT_ROUNDOFF = 2.0**-52

# 递推尾数的重归一化阈值
_RESCALE_HIGH = 1e100
_RESCALE_LOW = 1e-100


def cholesky_logdet(matrix: np.ndarray) -> float:
    """
    对称正定矩阵的 log det

    Raises:
        NumericalFailure: 分解失败（数值上非正定）
    """
    try:
        factor = scipy.linalg.cholesky(matrix, lower=True, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericalFailure(f"Cholesky 分解失败: {e}") from e
    return 2.0 * float(np.sum(np.log(np.diag(factor))))


# =============================================================================
# Exact determinant bound
# =============================================================================


def _validate_det_query(a0: float, sigma: float, eps: float, n_samples: int) -> None:
    if n_samples < 2:
        raise DomainError(f"N 必须 ≥ 2: N={n_samples}")
    if not sigma > 0.0:
        raise DomainError(f"sigma 必须 > 0: sigma={sigma}")
    if not eps >= 0.0:
        raise DomainError(f"eps 必须非负: eps={eps}")
    if abs(a0) == 1.0:
        raise DomainError(f"|a0| = 1 不属于任一区间: a0={a0}")


def _dense_is_reliable(kind: CovarianceKind, a0: float, eps: float, dim: int) -> bool:
    log_rounding = (
        2.0 * math.log(eps)
        + log_max_variance(kind, a0, dim)
        + math.log(dim * _UNIT_ROUNDOFF)
    )
    return log_rounding < math.log(_DENSE_ROUNDING_LIMIT)


def _logdet_dense(kind: CovarianceKind, a0: float, sigma: float, eps: float, dim: int) -> float:
    cov = build_covariance(kind, a0, sigma, dim)
    matrix = np.eye(dim) + (eps * eps / (sigma * sigma)) * cov.entries
    return cholesky_logdet(matrix)


def _logdet_whitened(kind: CovarianceKind, a0: float, eps: float, dim: int) -> float:
    # I + eps^2 G G^T = G (W W^T + eps^2 I) G^T，G = W^{-1} 不显式求逆
    operator = whitening_operator(kind, a0, dim)
    inner = operator @ operator.T + eps * eps * np.eye(dim)
    log_abs_det_g = -math.log(abs(operator[0, 0]))
    return 2.0 * log_abs_det_g + cholesky_logdet(inner)


def log_exact_det_bound(
    a0: float, sigma: float, eps: float, n_samples: int, method: DetMethod = "auto"
) -> float:
    """
    -1/4 log det(I + (eps^2/sigma^2) Cov)，Cov 为 (y_1, ..., y_{N-1}) 的协方差

    Args:
        method: "dense" 直接分解；"whitened" 经白化算子分解，
            适用于协方差元素随 |a0|^{2N} 增长的情形；"auto" 按舍入误差估计选择

    Raises:
        DomainError: 参数越界
        NumericalFailure: 分解失败
        SampleOverflow: 稠密路径下协方差溢出
    """
    _validate_det_query(a0, sigma, eps, n_samples)
    if eps == 0.0:
        return LOG_ONE

    kind = CovarianceKind.for_a0(a0)
    dim = n_samples - 1
    if method == "auto":
        method = "dense" if _dense_is_reliable(kind, a0, eps, dim) else "whitened"

    if method == "dense":
        logdet = _logdet_dense(kind, a0, sigma, eps, dim)
    elif method == "whitened":
        logdet = _logdet_whitened(kind, a0, eps, dim)
    else:
        raise DomainError(f"未知的行列式方法: {method}")

    return min(-0.25 * logdet, LOG_ONE)


def exact_det_bound(
    a0: float, sigma: float, eps: float, n_samples: int, method: DetMethod = "auto"
) -> float:
    """det(I + (eps^2/sigma^2) Cov)^{-1/4}，取值在 (0, 1]，与 sigma 无关"""
    return exp_checked(log_exact_det_bound(a0, sigma, eps, n_samples, method))


def determinant_bound(
    q: DeviationQuery, sigma: float = 1.0, method: DetMethod = "auto"
) -> BoundValue:
    """以 BoundValue 形式返回精确行列式界"""
    log_value = log_exact_det_bound(q.a0, sigma, q.eps, q.n_samples, method)
    return BoundValue(
        value=exp_checked(log_value),
        log_value=log_value,
        kind=BoundKind.DETERMINANT_DEVIATION,
        provenance=Provenance.DETERMINANT_EXACT,
        a0=q.a0,
        eps=q.eps,
        n_samples=q.n_samples,
    )


# =============================================================================
# Tridiagonal determinants
# =============================================================================


def tridiag_det_sequence(spec: TridiagonalSpec, upto: int) -> DeterminantSequence:
    """
    det(T_1), ..., det(T_upto)

    递推 D_k = beta D_{k-1} - alpha gamma D_{k-2}，D_0 = 1，D_{-1} = 0。
    尾数对 (D_k, D_{k-1}) 共享一个对数尺度，超出阈值时重归一化，因此不会溢出。
    """
    if not 1 <= upto <= spec.size:
        raise DomainError(f"upto 必须在 [1, {spec.size}] 内: upto={upto}")

    coupling = spec.alpha * spec.gamma
    current, previous = 1.0, 0.0
    log_scale = 0.0
    signs: list[float] = []
    log_abs: list[float] = []

    for _ in range(upto):
        current, previous = spec.beta * current - coupling * previous, current
        magnitude = max(abs(current), abs(previous))
        if magnitude > _RESCALE_HIGH or 0.0 < magnitude < _RESCALE_LOW:
            current /= magnitude
            previous /= magnitude
            log_scale += math.log(magnitude)

        if current == 0.0:
            signs.append(0.0)
            log_abs.append(LOG_ZERO)
        else:
            signs.append(math.copysign(1.0, current))
            log_abs.append(log_scale + math.log(abs(current)))

    return DeterminantSequence(signs=tuple(signs), log_abs=tuple(log_abs))


def _require_continuant_args(a0: float, eps: float, n_samples: int) -> None:
    if not abs(a0) > 1.0:
        raise DomainError(f"连分式恒等式要求 |a0| > 1: a0={a0}")
    if not eps >= 0.0:
        raise DomainError(f"eps 必须非负: eps={eps}")
    if n_samples < 3:
        raise DomainError(f"连分式恒等式要求 N ≥ 3: N={n_samples}")


def continuant_identity_lhs(a0: float, eps: float, n_samples: int) -> float:
    """
    det(T̄_{N-1} + eps^2 I) - a0^2 det(T̄_{N-2} + eps^2 I)

    由递推可知 E_k = E_{k-1} + eps^2 D_{k-1}，E_0 = 1，于是
    E_{N-1} = 1 + eps^2 (D_0 + ... + D_{N-2})，逐项为正，不存在两大数相减。
    """
    _require_continuant_args(a0, eps, n_samples)
    if eps == 0.0:
        return 1.0

    spec = TridiagonalSpec.unstable_family(a0, n_samples - 1, eps)
    sequence = tridiag_det_sequence(spec, n_samples - 2)
    if any(sign <= 0.0 for sign in sequence.signs):
        raise NumericalFailure("正定三对角矩阵出现非正行列式")

    log_terms = [LOG_ONE, *sequence.log_abs]
    return exp_checked(log_add(LOG_ONE, 2.0 * math.log(eps) + log_sum(log_terms)))


def continuant_closed_form(
    a0: float, eps: float, n_samples: int, *, cross_sign: float = 1.0
) -> float:
    """
    ((lambda2 - 1) lambda1^N + (1 - lambda1) lambda2^N) / (lambda2 - lambda1)

    cross_sign = -1 时第二项取负号，仅用于验证故障注入。
    """
    _require_continuant_args(a0, eps, n_samples)
    one_minus_l1, l2_minus_one, gap = root_gaps(a0, eps)
    lambda2 = 1.0 + l2_minus_one
    log_l1 = 2.0 * math.log(abs(a0)) - math.log(lambda2)

    log_first = safe_log(l2_minus_one) + n_samples * log_l1
    log_second = safe_log(one_minus_l1) + n_samples * math.log(lambda2)
    if cross_sign > 0.0:
        numerator = SignedLog(1.0, log_add(log_first, log_second))
    else:
        numerator = signed_log_difference(log_first, log_second)
    return SignedLog(numerator.sign, numerator.log_abs - math.log(gap)).to_float()


# =============================================================================
# Stationary Toeplitz minors
# =============================================================================


def leading_minor_log_pivots(
    a0: float, eps: float, upto: int, sigma: float = 1.0
) -> np.ndarray:
    """
    log(det T_n / det T_{n-1})，n = 1..upto，T_n = I + (eps^2/sigma^2) R_n

    一次 Cholesky 分解 T_upto，主元平方 L_nn^2 即为主子式之商。
    """
    if not abs(a0) < 1.0:
        raise DomainError(f"平稳 Toeplitz 主子式要求 |a0| < 1: a0={a0}")
    if upto < 1:
        raise DomainError(f"upto 必须 ≥ 1: upto={upto}")
    if not eps >= 0.0:
        raise DomainError(f"eps 必须非负: eps={eps}")

    cov = build_covariance(CovarianceKind.STATIONARY_TOEPLITZ, a0, sigma, upto)
    matrix = np.eye(upto) + (eps * eps / (sigma * sigma)) * cov.entries
    try:
        factor = scipy.linalg.cholesky(matrix, lower=True)
    except np.linalg.LinAlgError as e:
        raise NumericalFailure(f"Cholesky 分解失败: {e}") from e
    return 2.0 * np.log(np.diag(factor))


def det_quotient_monotonicity_check(a0: float, eps: float, upto: int) -> bool:
    """
    det(T_{n+1})/det(T_n) ≤ det(T_n)/det(T_{n-1})，n = 2..upto-1，相对容差 1e-10
    """
    if upto < 3:
        raise DomainError(f"upto 必须 ≥ 3: upto={upto}")
    log_pivots = leading_minor_log_pivots(a0, eps, upto)
    tolerance = math.log1p(1e-10)
    # log_pivots[k] 对应 n = k + 1
    violations = np.nonzero(log_pivots[2:] > log_pivots[1:-1] + tolerance)[0]
    if violations.size:
        logger.debug(f"主子式商单调性被破坏: n={int(violations[0]) + 2}")
    return violations.size == 0
