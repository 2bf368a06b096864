"""
闭式界

稳定区间（|a0| < 1，平稳数据）与不稳定区间（|a0| > 1，y_0 = 0）的偏差概率界、
方差界，以及渐近 Cramér-Rao 参考曲线。所有界都与噪声方差无关，因此不接受 sigma。
"""

import logging
import math

from ..errors import DomainError
from .logspace import (
    LOG_ONE,
    SignedLog,
    exp_checked,
    log_add,
    log_sub,
    safe_log,
    signed_log_difference,
)
from .models import BoundKind, BoundValue, DeviationQuery, Provenance, RootPair

logger = logging.getLogger(__name__)

# 方差界推导中选定的松弛指数
DEFAULT_M = 1.25
MIN_M = 0.25


# =============================================================================
# Domain checks
# =============================================================================


def _require_stable(a0: float) -> None:
    if not abs(a0) < 1.0:
        raise DomainError(f"稳定区间要求 |a0| < 1: a0={a0}")


def _require_unstable(a0: float) -> None:
    if not abs(a0) > 1.0:
        raise DomainError(f"不稳定区间要求 |a0| > 1: a0={a0}")


def _require_variance_length(n_samples: int) -> None:
    if n_samples < 7:
        raise DomainError(f"方差界要求 N ≥ 7: N={n_samples}")


def _require_relaxation(m: float) -> None:
    if not m >= MIN_M:
        raise DomainError(f"松弛指数要求 m ≥ 1/4: m={m}")


# =============================================================================
# Roots
# =============================================================================


def root_gaps(a0: float, eps: float) -> tuple[float, float, float]:
    """
    计算 (1 - lambda1, lambda2 - 1, lambda2 - lambda1)，不含相消

    判别式 D = (1 - a0^2)^2 + eps^2 (2 + 2 a0^2 + eps^2)，
    并利用 (1 - lambda1)(lambda2 - 1) = eps^2 由无相消的一支求另一支。
    """
    a2 = a0 * a0
    e2 = eps * eps
    sqrt_disc = math.sqrt((1.0 - a2) ** 2 + e2 * (2.0 + 2.0 * a2 + e2))
    w = 1.0 - a2 - e2
    if w >= 0.0:
        one_minus_l1 = 0.5 * (w + sqrt_disc)
        l2_minus_one = e2 / one_minus_l1
    else:
        l2_minus_one = 0.5 * (sqrt_disc - w)
        one_minus_l1 = e2 / l2_minus_one
    return one_minus_l1, l2_minus_one, sqrt_disc


def _root_pair(a0: float, eps: float) -> RootPair:
    a2 = a0 * a0
    one_minus_l1, l2_minus_one, sqrt_disc = root_gaps(a0, eps)
    lambda2 = 0.5 * (1.0 + a2 + eps * eps + sqrt_disc)
    return RootPair(
        lambda1=a2 / lambda2,
        lambda2=lambda2,
        one_minus_lambda1=one_minus_l1,
        lambda2_minus_one=l2_minus_one,
        gap=sqrt_disc,
    )


def unstable_roots(a0: float, eps: float) -> RootPair:
    """
    不稳定区间的两个根 lambda1 < 1 < lambda2（eps > 0 时）

    lambda2 取加号支，lambda1 = a0^2 / lambda2。
    """
    _require_unstable(a0)
    if eps < 0.0:
        raise DomainError(f"eps 必须非负: eps={eps}")
    return _root_pair(a0, eps)


# =============================================================================
# Deviation bounds
# =============================================================================


def _bound(
    log_value: float, kind: BoundKind, provenance: Provenance, q: DeviationQuery
) -> BoundValue:
    log_value = min(log_value, LOG_ONE)
    return BoundValue(
        value=exp_checked(log_value),
        log_value=log_value,
        kind=kind,
        provenance=provenance,
        a0=q.a0,
        eps=q.eps,
        n_samples=q.n_samples,
    )


def stable_log_growth(a0: float, eps: float) -> float:
    """log(S + sqrt(S^2 - a0^2))，S = (1 + a0^2 + eps^2) / 2，即 log lambda2"""
    _, l2_minus_one, _ = root_gaps(a0, eps)
    return math.log1p(l2_minus_one)


def stable_deviation_bound(q: DeviationQuery) -> BoundValue:
    """
    稳定区间偏差概率界

    ((1 - a0^2) / (1 - a0^2 + eps^2))^{1/4} (S + sqrt(S^2 - a0^2))^{-(N-2)/4}
    """
    _require_stable(q.a0)
    if q.eps == 0.0:
        return _bound(LOG_ONE, BoundKind.STABLE_DEVIATION, Provenance.CLOSED_FORM, q)

    e2 = q.eps * q.eps
    first = -0.25 * math.log1p(e2 / (1.0 - q.a0 * q.a0))
    second = -0.25 * (q.n_samples - 2) * stable_log_growth(q.a0, q.eps)
    return _bound(first + second, BoundKind.STABLE_DEVIATION, Provenance.CLOSED_FORM, q)


def log_unstable_denominator(a0: float, eps: float, n_samples: int) -> float:
    """log((1 - lambda1) lambda2^N + (lambda2 - 1) lambda1^N)"""
    roots = _root_pair(a0, eps)
    return log_add(
        safe_log(roots.one_minus_lambda1) + n_samples * math.log(roots.lambda2),
        safe_log(roots.lambda2_minus_one) + n_samples * math.log(roots.lambda1),
    )


def unstable_deviation_bound(q: DeviationQuery) -> BoundValue:
    """
    不稳定区间偏差概率界

    ((lambda2 - lambda1) / ((1 - lambda1) lambda2^N + (lambda2 - 1) lambda1^N))^{1/4}
    """
    _require_unstable(q.a0)
    if q.eps == 0.0:
        return _bound(LOG_ONE, BoundKind.UNSTABLE_DEVIATION, Provenance.CLOSED_FORM, q)

    roots = _root_pair(q.a0, q.eps)
    log_den = log_unstable_denominator(q.a0, q.eps, q.n_samples)
    log_value = 0.25 * (math.log(roots.gap) - log_den)
    return _bound(log_value, BoundKind.UNSTABLE_DEVIATION, Provenance.CLOSED_FORM, q)


def relaxed_unstable_bound(q: DeviationQuery, m: float = DEFAULT_M) -> BoundValue:
    """
    松弛后的不稳定区间界 min{1, lambda2^{-N/4} ((lambda2 - lambda1) / (1 - lambda1))^m}

    Raises:
        DomainError: m < 1/4，或 eps = 0（lambda1 = 1 时松弛无定义）
    """
    _require_unstable(q.a0)
    _require_relaxation(m)
    if q.eps == 0.0:
        raise DomainError("松弛界要求 eps > 0（eps = 0 时 lambda1 = 1）")

    roots = _root_pair(q.a0, q.eps)
    log_value = -0.25 * q.n_samples * math.log(roots.lambda2) + m * (
        math.log(roots.gap) - math.log(roots.one_minus_lambda1)
    )
    return _bound(log_value, BoundKind.RELAXED_UNSTABLE_DEVIATION, Provenance.RELAXED, q)


def deviation_bound(q: DeviationQuery) -> BoundValue:
    """按 a0 所在区间选择闭式偏差界"""
    if abs(q.a0) < 1.0:
        return stable_deviation_bound(q)
    return unstable_deviation_bound(q)


# =============================================================================
# Variance bounds
# =============================================================================


def _log_xstar(a0: float, n_samples: int, m: float) -> float:
    return (4.0 - n_samples / (2.0 * m)) * math.log(abs(a0)) + math.log(
        (n_samples + 4.0 * m) / n_samples
    )


def xstar_zstar(a0: float, n_samples: int, m: float = DEFAULT_M) -> tuple[float, float]:
    """
    方差积分的分段点

    x* = |a0|^{4 - N/(2m)} (N + 4m) / N，z* = a0^2 + x*

    Returns:
        (xstar, zstar)
    """
    _require_unstable(a0)
    _require_variance_length(n_samples)
    _require_relaxation(m)
    xstar = exp_checked(_log_xstar(a0, n_samples, m))
    return xstar, a0 * a0 + xstar


def regime_change_margin(a0: float, n_samples: int, m: float = DEFAULT_M) -> SignedLog:
    """
    f(z*) = z*^{k+1} - a0^2 z*^k - z*^2 + a0^2，k = N/(4m)

    写成 z*^k x* - (a0^2 - |a0| + x*)(z* + |a0|) 在对数域求值；合法的 (x*, z*) 使其为正。
    """
    _require_unstable(a0)
    _require_variance_length(n_samples)
    _require_relaxation(m)
    abs_a = abs(a0)
    log_x = _log_xstar(a0, n_samples, m)
    xstar = math.exp(log_x)
    zstar = a0 * a0 + xstar
    k = n_samples / (4.0 * m)
    log_lead = k * math.log(zstar) + log_x
    log_tail = math.log(a0 * a0 - abs_a + xstar) + math.log(zstar + abs_a)
    return signed_log_difference(log_lead, log_tail)


def stable_variance_bound(a0: float, n_samples: int) -> BoundValue:
    """
    稳定区间方差界 8/(N-6) - 8 a0^2/(N+2)

    Raises:
        DomainError: N < 7（界所依赖的积分发散）或 |a0| ≥ 1
    """
    _require_variance_length(n_samples)
    _require_stable(a0)
    value = 8.0 / (n_samples - 6) - 8.0 * a0 * a0 / (n_samples + 2)
    return BoundValue(
        value=value,
        log_value=math.log(value),
        kind=BoundKind.STABLE_VARIANCE,
        provenance=Provenance.CLOSED_FORM,
        a0=a0,
        n_samples=n_samples,
    )


def unstable_variance_bound(a0: float, n_samples: int) -> BoundValue:
    """
    不稳定区间方差界

    |a0|^{-2N/5} [2 a0^4 (N+5)/N + 8 (N/(N+5))^{1/4} (a0^2/(N-6) - 1/(N+2))]
    """
    _require_variance_length(n_samples)
    _require_unstable(a0)
    n = n_samples
    a2 = a0 * a0
    bracket = 2.0 * a2 * a2 * (n + 5) / n + 8.0 * (n / (n + 5)) ** 0.25 * (
        a2 / (n - 6) - 1.0 / (n + 2)
    )
    log_value = -0.4 * n * math.log(abs(a0)) + math.log(bracket)
    return BoundValue(
        value=exp_checked(log_value),
        log_value=log_value,
        kind=BoundKind.UNSTABLE_VARIANCE,
        provenance=Provenance.CLOSED_FORM,
        a0=a0,
        n_samples=n_samples,
    )


def unstable_variance_reassembled(a0: float, n_samples: int, m: float = DEFAULT_M) -> float:
    """
    2 x* + 8 (z* - a0^2)^{-1/4} (|a0|^{3-N/2}/(N-6) - |a0|^{1-N/2}/(N+2))

    m = 5/4 时与 unstable_variance_bound 相等。
    """
    _require_unstable(a0)
    _require_variance_length(n_samples)
    _require_relaxation(m)
    n = n_samples
    log_abs_a = math.log(abs(a0))
    log_x = _log_xstar(a0, n, m)
    log_remainder = (
        math.log(8.0)
        - 0.25 * log_x
        + log_sub(
            (3.0 - n / 2.0) * log_abs_a - math.log(n - 6),
            (1.0 - n / 2.0) * log_abs_a - math.log(n + 2),
        )
    )
    return exp_checked(log_add(math.log(2.0) + log_x, log_remainder))


def variance_bound(a0: float, n_samples: int) -> BoundValue:
    """按 a0 所在区间选择方差界"""
    if abs(a0) < 1.0:
        return stable_variance_bound(a0, n_samples)
    return unstable_variance_bound(a0, n_samples)


def cramer_rao_asymptote(a0: float, n_samples: int) -> float:
    """
    渐近 Cramér-Rao 方差 (1 - a0^2)/(N - 1)

    仅作参考曲线，不是有限样本下的保证界。
    """
    _require_stable(a0)
    if n_samples < 2:
        raise DomainError(f"N 必须 ≥ 2: N={n_samples}")
    return (1.0 - a0 * a0) / (n_samples - 1)
