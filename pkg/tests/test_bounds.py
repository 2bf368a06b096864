"""
Closed-Form Bound Unit Tests
"""

import math

import pytest
from pydantic import ValidationError

from src.bounds import (
    BoundKind,
    BoundValue,
    DeviationQuery,
    Provenance,
    cramer_rao_asymptote,
    deviation_bound,
    log_add,
    log_sub,
    log_sum,
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
from src.bounds.logspace import signed_log_difference
from src.errors import DomainError, SampleOverflow


def _q(a0: float, eps: float, n: int) -> DeviationQuery:
    return DeviationQuery(a0=a0, eps=eps, n_samples=n)


class TestLogSpace:
    """测试对数域算术"""

    def test_log_add(self):
        assert log_add(math.log(2.0), math.log(3.0)) == pytest.approx(math.log(5.0))

    def test_log_add_with_zero(self):
        assert log_add(float("-inf"), 1.5) == 1.5

    def test_log_sub(self):
        assert log_sub(math.log(5.0), math.log(3.0)) == pytest.approx(math.log(2.0))

    def test_log_sub_requires_order(self):
        with pytest.raises(ValueError):
            log_sub(0.0, 1.0)

    def test_log_sum_order_free(self):
        """求和结果与顺序无关"""
        values = [0.1 * k for k in range(50)]
        assert log_sum(values) == log_sum(list(reversed(values)))
        assert log_sum(values) == pytest.approx(math.log(sum(math.exp(v) for v in values)))

    def test_signed_difference(self):
        diff = signed_log_difference(math.log(2.0), math.log(5.0))
        assert diff.sign == -1.0
        assert diff.to_float() == pytest.approx(-3.0)

    def test_overflow_reported(self):
        with pytest.raises(SampleOverflow):
            signed_log_difference(800.0, 0.0).to_float()


class TestRoots:
    """测试特征根"""

    def test_gap_product_is_eps_squared(self):
        """(1 - lambda1)(lambda2 - 1) = eps^2，包括 eps 极小时"""
        for a0, eps in [(0.5, 1e-8), (0.99, 1e-6), (1.01, 1e-7), (2.0, 3.0)]:
            u, v, _ = root_gaps(a0, eps)
            assert u * v == pytest.approx(eps * eps, rel=1e-14)

    def test_unstable_roots_at_zero_eps(self):
        """eps = 0 时 lambda1 = 1，lambda2 = a0^2"""
        roots = unstable_roots(2.0, 0.0)
        assert roots.lambda1 == pytest.approx(1.0)
        assert roots.lambda2 == pytest.approx(4.0)
        assert roots.one_minus_lambda1 == 0.0

    def test_vieta(self):
        """lambda1 lambda2 = a0^2，lambda1 + lambda2 = 1 + a0^2 + eps^2"""
        roots = unstable_roots(1.1, 0.5)
        assert roots.lambda1 * roots.lambda2 == pytest.approx(1.21)
        assert roots.lambda1 + roots.lambda2 == pytest.approx(1.0 + 1.21 + 0.25)
        assert roots.lambda1 < 1.0 < roots.lambda2

    def test_unstable_roots_domain(self):
        with pytest.raises(DomainError):
            unstable_roots(0.5, 1.0)

    def test_stable_log_growth_at_zero_a0(self):
        """a0 = 0 时 lambda2 = 1 + eps^2"""
        assert stable_log_growth(0.0, 2.0) == pytest.approx(math.log(5.0))


class TestDeviationBounds:
    """测试偏差概率界"""

    def test_stable_two_samples(self):
        """N = 2 时只剩第一个因子"""
        bound = stable_deviation_bound(_q(0.5, 1.0, 2))
        assert bound.value == pytest.approx((0.75 / 1.75) ** 0.25, rel=1e-12)
        assert bound.value == pytest.approx(0.809, abs=1e-3)
        assert bound.kind == BoundKind.STABLE_DEVIATION
        assert bound.provenance == Provenance.CLOSED_FORM

    def test_stable_zero_eps(self):
        assert stable_deviation_bound(_q(0.7, 0.0, 50)).value == 1.0

    def test_stable_white_noise(self):
        """a0 = 0 时界为 (1 + eps^2)^{-(N-1)/4}"""
        bound = stable_deviation_bound(_q(0.0, 0.5, 11))
        assert bound.value == pytest.approx(1.25 ** (-2.5), rel=1e-12)

    def test_unstable_two_samples(self):
        """N = 2 时界为 (1 + eps^2)^{-1/4}"""
        for a0, eps in [(1.5, 0.5), (1.01, 0.1), (-2.0, 1.0)]:
            bound = unstable_deviation_bound(_q(a0, eps, 2))
            assert bound.value == pytest.approx((1.0 + eps * eps) ** -0.25, rel=1e-12)

    def test_unstable_zero_eps(self):
        assert unstable_deviation_bound(_q(1.5, 0.0, 30)).value == 1.0

    def test_symmetric_in_a0(self):
        assert deviation_bound(_q(-0.5, 0.3, 20)).value == deviation_bound(_q(0.5, 0.3, 20)).value
        assert deviation_bound(_q(-1.2, 0.3, 20)).value == deviation_bound(_q(1.2, 0.3, 20)).value

    def test_regime_checks(self):
        with pytest.raises(DomainError):
            stable_deviation_bound(_q(1.5, 1.0, 10))
        with pytest.raises(DomainError):
            unstable_deviation_bound(_q(0.5, 1.0, 10))

    @pytest.mark.parametrize("a0", [0.5, 0.98, 1.01, 1.1])
    def test_monotone_in_eps_and_n(self, a0):
        """关于 eps 与 N 非增"""
        eps_grid = [0.01, 0.05, 0.1, 0.5, 1.0, 2.0, 5.0]
        for n in (2, 5, 10, 50, 100):
            values = [deviation_bound(_q(a0, e, n)).log_value for e in eps_grid]
            assert all(b <= a for a, b in zip(values, values[1:]))
        for eps in eps_grid:
            values = [deviation_bound(_q(a0, eps, n)).log_value for n in range(2, 101)]
            assert all(b <= a for a, b in zip(values, values[1:]))

    def test_values_in_unit_interval(self):
        for a0 in (0.1, 0.98, 1.01, 3.0):
            for eps in (1e-6, 0.1, 10.0):
                bound = deviation_bound(_q(a0, eps, 40))
                assert 0.0 <= bound.value <= 1.0

    def test_large_n_underflows_gracefully(self):
        """value 下溢为 0，log_value 仍有限"""
        bound = stable_deviation_bound(_q(0.5, 1.0, 10**6))
        assert bound.value == 0.0
        assert math.isfinite(bound.log_value)
        bound = unstable_deviation_bound(_q(2.0, 1.0, 10**5))
        assert bound.value == 0.0
        assert bound.log_value < -1000.0

    def test_small_eps_near_unit_root(self):
        """eps ≪ 1 且 |a0| ≈ 1 时仍严格小于 1"""
        bound = stable_deviation_bound(_q(0.999, 1e-5, 1000))
        assert bound.log_value < 0.0
        bound = unstable_deviation_bound(_q(1.001, 1e-5, 1000))
        assert bound.log_value < 0.0

    def test_relaxed_bound(self):
        bound = relaxed_unstable_bound(_q(1.1, 0.5, 50))
        assert 0.0 <= bound.value <= 1.0
        assert bound.provenance == Provenance.RELAXED

    def test_relaxed_bound_domain(self):
        with pytest.raises(DomainError):
            relaxed_unstable_bound(_q(1.1, 0.5, 50), m=0.2)
        with pytest.raises(DomainError):
            relaxed_unstable_bound(_q(1.1, 0.0, 50))

    @pytest.mark.parametrize("m", [0.25, 1.25, 3.0])
    @pytest.mark.parametrize("a0", [1.01, 1.1, 1.5, 2.0, -1.3])
    def test_relaxed_dominates_unstable(self, a0, m):
        """松弛界不小于不稳定区间闭式界"""
        for eps in (0.01, 0.1, 0.5, 1.0, 5.0):
            for n in (2, 10, 50, 200, 1000):
                relaxed = relaxed_unstable_bound(_q(a0, eps, n), m=m)
                exact = unstable_deviation_bound(_q(a0, eps, n))
                assert relaxed.log_value >= exact.log_value - 1e-12

    def test_relaxed_clamps_to_one(self):
        """lambda2^{-N/4} ((lambda2 - lambda1) / (1 - lambda1))^m ≥ 1 时取 1"""
        bound = relaxed_unstable_bound(_q(1.1, 0.5, 2), m=3.0)
        assert bound.value == 1.0
        assert bound.log_value == 0.0

    def test_query_validation(self):
        with pytest.raises(ValidationError):
            DeviationQuery(a0=0.5, eps=-1.0, n_samples=10)
        with pytest.raises(ValidationError):
            DeviationQuery(a0=0.5, eps=1.0, n_samples=1)
        with pytest.raises(ValidationError):
            DeviationQuery(a0=float("inf"), eps=1.0, n_samples=10)


class TestVarianceBounds:
    """测试方差界"""

    def test_stable_formula(self):
        assert stable_variance_bound(0.5, 7).value == pytest.approx(8.0 - 2.0 / 9.0)
        for n in (7, 50, 500):
            expected = 8.0 / (n - 6) - 2.0 / (n + 2)
            assert stable_variance_bound(0.5, n).value == pytest.approx(expected, rel=1e-14)

    def test_requires_seven_samples(self):
        with pytest.raises(DomainError, match="N ≥ 7"):
            stable_variance_bound(0.5, 6)
        with pytest.raises(DomainError, match="N ≥ 7"):
            unstable_variance_bound(1.1, 6)

    def test_unstable_formula(self):
        a2 = 1.21
        bracket = 2.0 * a2 * a2 * 55 / 50 + 8.0 * (50 / 55) ** 0.25 * (a2 / 44 - 1 / 52)
        expected = 1.1 ** (-20.0) * bracket
        bound = unstable_variance_bound(1.1, 50)
        assert bound.value == pytest.approx(expected, rel=1e-12)
        assert bound.value == pytest.approx(0.488, abs=1e-3)

    def test_unstable_ordering(self):
        """指数前因子使更大的 |a0| 给出更小的界"""
        assert unstable_variance_bound(1.1, 500).value < unstable_variance_bound(1.01, 500).value

    def test_xstar_zstar(self):
        xstar, zstar = xstar_zstar(1.1, 10, 1.25)
        assert xstar == pytest.approx(1.5, rel=1e-14)
        assert zstar == pytest.approx(2.71, rel=1e-14)

    def test_regime_change_margin_positive(self):
        margin = regime_change_margin(1.5, 50)
        assert margin.sign > 0.0
        assert margin.to_float() > 0.0

    @pytest.mark.parametrize("a0", [1.01, 1.1, 2.0])
    @pytest.mark.parametrize("n", [7, 20, 100])
    def test_reassembly(self, a0, n):
        """m = 5/4 时两种形式一致"""
        assert unstable_variance_reassembled(a0, n) == pytest.approx(
            unstable_variance_bound(a0, n).value, rel=1e-12
        )

    def test_ratio_to_cramer_rao(self):
        """大 N 时稳定方差界约为渐近 Cramér-Rao 值的 8 倍"""
        n = 10**6
        ratio = stable_variance_bound(0.5, n).value / cramer_rao_asymptote(0.5, n)
        assert ratio == pytest.approx(8.0, rel=1e-3)

    def test_cramer_rao(self):
        assert cramer_rao_asymptote(0.5, 101) == pytest.approx(0.0075)
        with pytest.raises(DomainError):
            cramer_rao_asymptote(1.5, 101)

    def test_variance_dispatch(self):
        assert variance_bound(0.5, 10).kind == BoundKind.STABLE_VARIANCE
        assert variance_bound(1.5, 10).kind == BoundKind.UNSTABLE_VARIANCE


class TestBoundValue:
    """测试 BoundValue 验证"""

    def test_deviation_above_one_rejected(self):
        with pytest.raises(ValidationError):
            BoundValue(
                value=1.5,
                log_value=math.log(1.5),
                kind=BoundKind.STABLE_DEVIATION,
                provenance=Provenance.CLOSED_FORM,
                a0=0.5,
                eps=1.0,
                n_samples=10,
            )

    def test_variance_may_exceed_one(self):
        bound = BoundValue(
            value=7.0,
            log_value=math.log(7.0),
            kind=BoundKind.STABLE_VARIANCE,
            provenance=Provenance.CLOSED_FORM,
            a0=0.5,
            n_samples=7,
        )
        assert bound.eps is None


class TestReferenceValues:
    """与 50 位精度参考值比较"""

    def test_stable_deviation(self):
        bound = stable_deviation_bound(_q(0.5, 1.0, 10))
        assert bound.value == pytest.approx(0.17787412680488340856, rel=1e-13)

    def test_unstable_roots_near_unit_root(self):
        roots = unstable_roots(1.01, 0.01)
        assert roots.lambda1 == pytest.approx(0.99588697780202957679, rel=1e-13)
        assert roots.lambda2 == pytest.approx(1.02431302219797042321, rel=1e-13)

    def test_relaxed_quarter(self):
        bound = relaxed_unstable_bound(_q(2.0, 0.5, 40), m=0.25)
        assert bound.value == pytest.approx(1.1318912174256804987e-6, rel=1e-13)

    def test_unstable_variance(self):
        assert unstable_variance_bound(1.1, 7).value == pytest.approx(
            9.7273425031655859443, rel=1e-13
        )
