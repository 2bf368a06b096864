"""
Monte Carlo Unit Tests
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.bounds import (
    DeviationQuery,
    cramer_rao_asymptote,
    deviation_bound,
    stable_variance_bound,
    unstable_variance_bound,
)
from src.errors import DomainError
from src.monte_carlo import (
    McConfig,
    Statistic,
    Tail,
    collect_deviations,
    deviation_probs_from,
    estimate_deviation_probs,
    estimate_variance,
    variance_from,
    wilson_interval,
    z_score,
)
from src.process import Ar1Params, Regime


def _config(
    a0: float,
    n: int,
    runs: int,
    eps_grid: tuple[float, ...] = (),
    sigma: float = 1.0,
    initial_value: float | None = None,
    base_seed: int = 2024,
) -> McConfig:
    params = Ar1Params(a0=a0, sigma=sigma, regime=Regime.for_a0(a0))
    return McConfig(
        params=params,
        n_samples=n,
        runs=runs,
        base_seed=base_seed,
        eps_grid=eps_grid,
        initial_value=initial_value,
    )


class TestIntervals:
    """测试置信区间"""

    def test_z_score(self):
        assert z_score(0.95) == pytest.approx(1.959964, abs=1e-6)

    def test_wilson_zero_successes(self):
        """p_hat = 0 时下限为 0，上限约为 z^2 / (n + z^2)"""
        lower, upper = wilson_interval(0, 100)
        assert lower == 0.0
        z2 = z_score() ** 2
        assert upper == pytest.approx(z2 / (100 + z2), rel=1e-12)

    def test_wilson_symmetric(self):
        lower, upper = wilson_interval(50, 100)
        assert 0.5 - lower == pytest.approx(upper - 0.5)
        assert lower == pytest.approx(0.404, abs=1e-3)

    def test_wilson_all_successes(self):
        lower, upper = wilson_interval(100, 100)
        assert upper == 1.0
        assert lower < 1.0

    def test_wilson_no_trials(self):
        assert wilson_interval(0, 0) == (0.0, 1.0)


class TestMcConfig:
    """测试实验配置"""

    def test_eps_grid_must_increase(self):
        with pytest.raises(ValidationError):
            _config(0.5, 10, 10, eps_grid=(0.5, 0.1))

    def test_negative_eps_rejected(self):
        with pytest.raises(ValidationError):
            _config(0.5, 10, 10, eps_grid=(-0.1, 0.1))

    def test_runs_positive(self):
        with pytest.raises(ValidationError):
            _config(0.5, 10, 0)

    def test_resolution(self):
        assert _config(0.5, 10, 300).resolution == pytest.approx(0.01)


class TestCollect:
    """测试并行执行与可复现性"""

    @pytest.mark.parametrize("workers", [2, 4, 16])
    def test_worker_count_does_not_matter(self, workers):
        """多进程与单进程得到逐位相同的结果"""
        cfg = _config(0.98, 20, 300)
        serial = collect_deviations(cfg, workers=1, chunk_size=16)
        parallel = collect_deviations(cfg, workers=workers, chunk_size=16)
        assert np.array_equal(serial, parallel)

    def test_chunk_size_does_not_matter(self):
        cfg = _config(1.1, 20, 200)
        a = collect_deviations(cfg, workers=1, chunk_size=7)
        b = collect_deviations(cfg, workers=1, chunk_size=200)
        assert np.array_equal(a, b)

    def test_runs_are_prefix_stable(self):
        """前 r 次运行的结果与总运行次数无关"""
        short = collect_deviations(_config(0.5, 15, 50), workers=1)
        long = collect_deviations(_config(0.5, 15, 120), workers=1)
        assert np.array_equal(short, long[:50])

    def test_invalid_workers(self):
        with pytest.raises(DomainError):
            collect_deviations(_config(0.5, 10, 10), workers=0)


class TestDeviationProbs:
    """测试经验偏差概率"""

    def test_monotone_in_eps(self):
        cfg = _config(0.5, 20, 1000, eps_grid=(0.0, 0.05, 0.1, 0.2, 0.5))
        values = [e.value for e in estimate_deviation_probs(cfg, workers=1)]
        assert all(b <= a for a, b in zip(values, values[1:]))

    def test_interval_contains_value(self):
        cfg = _config(1.01, 20, 500, eps_grid=(0.01, 0.1))
        for est in estimate_deviation_probs(cfg, workers=1):
            assert est.statistic == Statistic.DEVIATION_PROB
            assert est.ci_low <= est.value <= est.ci_high
            assert est.runs == 500

    def test_zero_noise_hook(self):
        """sigma = 0 且显式 y_1 时 a_hat = a0，概率为 0"""
        cfg = _config(0.5, 20, 50, eps_grid=(0.0, 0.1), sigma=0.0, initial_value=1.0)
        for est in estimate_deviation_probs(cfg, workers=1):
            assert est.value == 0.0

    def test_two_sample_symmetry(self):
        """N = 2 时 a_hat - a0 = z_2 / y_1 关于 0 对称"""
        cfg = _config(0.5, 2, 4000, eps_grid=(0.0,))
        est = estimate_deviation_probs(cfg, workers=1)[0]
        assert est.value == pytest.approx(0.5, abs=0.04)

    def test_tails_partition(self):
        """eps = 0 时上尾与下尾概率之和为 1"""
        cfg = _config(0.5, 20, 800, eps_grid=(0.0,))
        upper = estimate_deviation_probs(cfg, workers=1, tail="upper")[0]
        lower = estimate_deviation_probs(cfg, workers=1, tail=Tail.LOWER)[0]
        assert upper.value + lower.value == pytest.approx(1.0)
        assert lower.tail == Tail.LOWER

    @pytest.mark.parametrize("a0", [0.5, 0.98, 1.01, 1.1])
    def test_below_bound(self, a0):
        """经验概率不超过闭式界"""
        eps_grid = (0.05, 0.1, 0.3, 0.5)
        cfg = _config(a0, 20, 2000, eps_grid=eps_grid)
        for est in estimate_deviation_probs(cfg, workers=1):
            bound = deviation_bound(DeviationQuery(a0=a0, eps=est.eps, n_samples=20))
            assert est.ci_low <= bound.value

    def test_empty_grid(self):
        with pytest.raises(DomainError):
            estimate_deviation_probs(_config(0.5, 10, 10), workers=1)

    def test_failed_runs_excluded(self):
        deviations = np.array([np.nan, 0.2, -0.3, 0.05])
        est = deviation_probs_from(deviations, (0.1,))[0]
        assert est.runs == 3
        assert est.failed_runs == 1
        assert est.value == pytest.approx(1.0 / 3.0)

    def test_all_runs_degenerate(self):
        """y_1 = 0 且 sigma = 0 时每次运行分母都退化"""
        cfg = _config(0.5, 10, 20, eps_grid=(0.1,), sigma=0.0, initial_value=0.0)
        est = estimate_deviation_probs(cfg, workers=1)[0]
        assert est.runs == 0
        assert est.failed_runs == 20
        assert (est.ci_low, est.ci_high) == (0.0, 1.0)


class TestVariance:
    """测试经验方差"""

    def test_stable_sandwich(self):
        """0.2 CR ≤ 经验方差 ≤ 稳定方差界"""
        est = estimate_variance(_config(0.5, 100, 2000), workers=1)
        assert est.statistic == Statistic.VARIANCE
        assert 0.2 * cramer_rao_asymptote(0.5, 100) <= est.value
        assert est.value <= stable_variance_bound(0.5, 100).value
        assert est.ci_low <= est.value <= est.ci_high

    def test_unstable_below_bound(self):
        est = estimate_variance(_config(1.1, 50, 2000), workers=1)
        assert est.value <= unstable_variance_bound(1.1, 50).value

    def test_zero_noise(self):
        est = estimate_variance(_config(1.5, 30, 20, sigma=0.0, initial_value=1.0), workers=1)
        assert est.value == pytest.approx(0.0, abs=1e-20)

    def test_heavy_tail_flag(self):
        assert estimate_variance(_config(0.5, 5, 100), workers=1).heavy_tail
        assert not estimate_variance(_config(0.5, 10, 100), workers=1).heavy_tail

    def test_no_valid_runs(self):
        est = variance_from(np.array([np.nan, np.nan]), 10)
        assert est.runs == 0
        assert est.failed_runs == 2
        assert math.isinf(est.ci_high)

    def test_std_err(self):
        """(a_hat - a0)^2 取值 {1, 9} 各半时标准误差为 4 / sqrt(n)"""
        est = variance_from(np.array([1.0, -1.0, 3.0, -3.0]), 10)
        assert est.value == pytest.approx(5.0)
        assert est.std_err == pytest.approx(4.0 / 2.0)
