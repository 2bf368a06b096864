"""
恒等式与占优检查

覆盖闭式界推导依赖的全部矩阵/谱恒等式，以及闭式界与精确行列式界的关系。
"""

import itertools
import math

import numpy as np

from ..bounds import (
    DeviationQuery,
    deviation_bound,
    regime_change_margin,
    stable_deviation_bound,
    stable_variance_bound,
    unstable_deviation_bound,
    unstable_roots,
    unstable_variance_bound,
    unstable_variance_reassembled,
)
from ..experiments.reproduce import FIGURE_A0
from ..oracle import (
    TridiagonalSpec,
    continuant_closed_form,
    continuant_identity_lhs,
    det_quotient_monotonicity_check,
    inverse_identity_residual,
    leading_minor_log_pivots,
    log_exact_det_bound,
    numerical_eigenvalues,
    perturbed_tridiag_eigenvalues,
    perturbed_tridiag_matrix,
    szego_log_factor,
    szego_quadrature,
    tridiag_det_sequence,
    variance_integral_quadrature,
)
from .base import BaseCheck, CheckRegistry

UNSTABLE_A0 = (1.01, 1.1, 1.5, 2.0)


def _relative(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), math.ulp(1.0))


# =============================================================================
# Spectral identities
# =============================================================================


class SzegoQuadratureCheck(BaseCheck):
    name = "szego_quadrature"
    description = "log 增长因子闭式与 (1/pi)∫ log(1 + eps^2/|e^{jw} - a0|^2) dw 一致"
    tolerance = 1e-8

    def measure(self, fault: bool = False) -> float:
        grid_a0 = np.linspace(-0.99, 0.99, 20)
        grid_eps = np.geomspace(0.01, 5.0, 20)
        return max(
            abs(szego_quadrature(float(a), float(e)) - szego_log_factor(float(a), float(e)))
            for a, e in itertools.product(grid_a0, grid_eps)
        )


class SzegoQuotientLimitCheck(BaseCheck):
    name = "szego_quotient_limit"
    description = "det(T_n)/det(T_{n-1}) 在 n = 200 时接近 Szegő 极限，且单调下降"
    tolerance = 1e-3

    def measure(self, fault: bool = False) -> float:
        worst = 0.0
        for a0, eps in itertools.product((0.5, 0.9), (0.5, 1.0)):
            log_pivots = leading_minor_log_pivots(a0, eps, 200)
            if np.any(np.diff(log_pivots) > 1e-12):
                return math.inf
            worst = max(worst, abs(float(log_pivots[-1]) - szego_log_factor(a0, eps)))
        return worst


class EigenvalueCheck(BaseCheck):
    name = "perturbed_eigenvalues"
    description = "R̄^{-1} 的秩一扰动的特征值闭式与稠密特征值求解一致"
    tolerance = 1e-8

    def measure(self, fault: bool = False) -> float:
        worst = 0.0
        for a0, dim in itertools.product((1.01, 1.5, 2.0, -1.3), (1, 2, 5, 10, 25)):
            closed = perturbed_tridiag_eigenvalues(a0, dim)
            dense = numerical_eigenvalues(perturbed_tridiag_matrix(a0, dim))
            worst = max(worst, max(abs(c - d) for c, d in zip(closed, dense)))
        return worst


# =============================================================================
# Matrix identities
# =============================================================================


class InverseResidualCheck(BaseCheck):
    name = "inverse_residual"
    description = "零初值协方差的逆为三对角矩阵"
    tolerance = 1e-8

    def measure(self, fault: bool = False) -> float:
        return max(
            inverse_identity_residual(a0, 1.0, dim)
            for a0, dim in itertools.product((1.01, 1.1, 1.5), (2, 5, 10, 25, 50))
        )


class TridiagonalDeterminantCheck(BaseCheck):
    name = "tridiag_determinants"
    description = "三项递推与稠密 LU 行列式一致"
    tolerance = 1e-10

    SPECS = (
        TridiagonalSpec.unstable_family(1.5, 12, eps=0.5),
        TridiagonalSpec.unstable_family(-1.1, 12, eps=0.1),
        TridiagonalSpec(alpha=1.0, beta=2.5, gamma=1.0, size=12),
        TridiagonalSpec(alpha=-0.7, beta=-2.0, gamma=1.3, size=12),
    )

    def measure(self, fault: bool = False) -> float:
        worst = 0.0
        for spec in self.SPECS:
            dense = spec.to_dense()
            sequence = tridiag_det_sequence(spec, spec.size)
            for k in range(1, spec.size + 1):
                sign, logdet = np.linalg.slogdet(dense[:k, :k])
                recursive = sequence[k - 1]
                if sign != recursive.sign:
                    return math.inf
                worst = max(worst, abs(math.expm1(recursive.log_abs - float(logdet))))
        return worst


class ContinuantCheck(BaseCheck):
    name = "continuant_identity"
    description = "det(T̄_{N-1} + eps^2 I) - a0^2 det(T̄_{N-2} + eps^2 I) 的递推值与根式闭式一致"
    tolerance = 1e-8
    supports_fault = True

    def measure(self, fault: bool = False) -> float:
        cross_sign = -1.0 if fault else 1.0
        worst = 0.0
        for a0, eps, n in itertools.product(UNSTABLE_A0, (0.1, 0.5, 1.0), (3, 10, 25, 40)):
            lhs = continuant_identity_lhs(a0, eps, n)
            rhs = continuant_closed_form(a0, eps, n, cross_sign=cross_sign)
            worst = max(worst, _relative(lhs, rhs))
        return worst


class QuotientMonotonicityCheck(BaseCheck):
    name = "quotient_monotonicity"
    description = "平稳 Toeplitz 主子式之商 det(T_{n+1})/det(T_n) 非增"
    tolerance = 0.0

    def measure(self, fault: bool = False) -> float:
        failures = sum(
            not det_quotient_monotonicity_check(a0, eps, 100)
            for a0, eps in itertools.product((0.5, 0.98), (0.01, 1.0))
        )
        return float(failures)


# =============================================================================
# Bound relations
# =============================================================================


class UnstableEqualityCheck(BaseCheck):
    name = "unstable_equality"
    description = "不稳定区间闭式界等于精确行列式界"
    tolerance = 1e-8

    def measure(self, fault: bool = False) -> float:
        worst = 0.0
        for a0, eps, n in itertools.product(UNSTABLE_A0, (0.1, 0.5, 1.0), (2, 10, 30, 60)):
            closed = unstable_deviation_bound(DeviationQuery(a0=a0, eps=eps, n_samples=n))
            exact = log_exact_det_bound(a0, 1.0, eps, n)
            worst = max(worst, abs(math.expm1(closed.log_value - exact)))
        return worst


class StableDominanceCheck(BaseCheck):
    name = "stable_dominance"
    description = "稳定区间精确行列式界不超过闭式界"
    tolerance = 1e-12

    def measure(self, fault: bool = False) -> float:
        worst = -math.inf
        grid = itertools.product((0.1, 0.5, 0.9, 0.98), (0.1, 1.0, 5.0), (2, 10, 50, 200))
        for a0, eps, n in grid:
            closed = stable_deviation_bound(DeviationQuery(a0=a0, eps=eps, n_samples=n))
            exact = log_exact_det_bound(a0, 1.0, eps, n)
            worst = max(worst, exact - closed.log_value)
        return worst


class DeterminantMethodsCheck(BaseCheck):
    name = "determinant_methods"
    description = "稠密分解与白化分解给出相同的行列式界"
    tolerance = 1e-10

    def measure(self, fault: bool = False) -> float:
        worst = 0.0
        # 只取稠密分解仍可信的参数
        for a0, eps, n in itertools.product((0.5, 0.9, -0.9, 1.01), (0.1, 1.0), (2, 10, 30)):
            dense = log_exact_det_bound(a0, 1.0, eps, n, method="dense")
            whitened = log_exact_det_bound(a0, 1.0, eps, n, method="whitened")
            worst = max(worst, abs(dense - whitened))
        return worst


class VarianceQuadratureCheck(BaseCheck):
    name = "variance_quadrature"
    description = "稳定区间方差界等于 2∫ lambda2(x)^{-(N-2)/4} dx"
    tolerance = 1e-6

    def measure(self, fault: bool = False) -> float:
        worst = 0.0
        for a0, n in itertools.product((0.0, 0.5, 0.9), (7, 10, 50, 500)):
            closed = stable_variance_bound(a0, n).value
            worst = max(worst, _relative(variance_integral_quadrature(a0, n), closed))
        return worst


class VarianceFullBoundCheck(BaseCheck):
    name = "variance_full_bound"
    description = "完整偏差界的积分不超过稳定区间方差界"
    tolerance = 1e-9

    def measure(self, fault: bool = False) -> float:
        worst = -math.inf
        for a0, n in itertools.product((0.0, 0.5, 0.9), (7, 10, 50)):
            closed = stable_variance_bound(a0, n).value
            full = variance_integral_quadrature(a0, n, include_first_factor=True)
            worst = max(worst, full / closed - 1.0)
        return worst


class VarianceReassemblyCheck(BaseCheck):
    name = "variance_reassembly"
    description = "不稳定方差界与 2x* + 余项 (m = 5/4) 一致"
    tolerance = 1e-12

    def measure(self, fault: bool = False) -> float:
        return max(
            _relative(unstable_variance_bound(a0, n).value, unstable_variance_reassembled(a0, n))
            for a0, n in itertools.product((1.01, 1.1, 2.0), (7, 20, 100))
        )


class RegimeMarginCheck(BaseCheck):
    name = "regime_change_margin"
    description = "分段点 (x*, z*) 处 f(z*) > 0"
    tolerance = 0.0

    def measure(self, fault: bool = False) -> float:
        return float(
            sum(
                regime_change_margin(a0, n).sign <= 0.0
                for a0, n in itertools.product(UNSTABLE_A0, (7, 20, 50, 100))
            )
        )


class RootGapCheck(BaseCheck):
    name = "root_gaps"
    description = "无相消的根间隙与直接相减一致"
    tolerance = 1e-11

    def measure(self, fault: bool = False) -> float:
        worst = 0.0
        for a0, eps in itertools.product(UNSTABLE_A0, (0.01, 0.1, 1.0, 5.0)):
            roots = unstable_roots(a0, eps)
            total = 1.0 + a0 * a0 + eps * eps
            worst = max(
                worst,
                _relative(roots.lambda2 - roots.lambda1, roots.gap),
                _relative(roots.lambda1 + roots.lambda2, total),
                _relative(roots.one_minus_lambda1 * roots.lambda2_minus_one, eps * eps),
            )
        return worst


class BoundMonotonicityCheck(BaseCheck):
    name = "bound_monotonicity"
    description = "闭式偏差界关于 eps 与 N 非增"
    tolerance = 1e-12

    def measure(self, fault: bool = False) -> float:
        eps_grid = np.geomspace(0.01, 5.0, 40)
        worst = -math.inf
        for a0 in (*FIGURE_A0, -0.5, -1.5):
            surface = np.array(
                [
                    [
                        deviation_bound(DeviationQuery(a0=a0, eps=float(e), n_samples=n)).log_value
                        for e in eps_grid
                    ]
                    for n in range(2, 101)
                ]
            )
            worst = max(worst, float(np.max(np.diff(surface, axis=0))))
            worst = max(worst, float(np.max(np.diff(surface, axis=1))))
        return worst


def default_registry() -> CheckRegistry:
    """包含全部检查的注册表"""
    registry = CheckRegistry()
    for check in (
        SzegoQuadratureCheck(),
        SzegoQuotientLimitCheck(),
        ContinuantCheck(),
        TridiagonalDeterminantCheck(),
        InverseResidualCheck(),
        EigenvalueCheck(),
        QuotientMonotonicityCheck(),
        UnstableEqualityCheck(),
        StableDominanceCheck(),
        DeterminantMethodsCheck(),
        VarianceQuadratureCheck(),
        VarianceFullBoundCheck(),
        VarianceReassemblyCheck(),
        RegimeMarginCheck(),
        RootGapCheck(),
        BoundMonotonicityCheck(),
    ):
        registry.register(check)
    return registry
