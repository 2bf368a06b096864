"""
Oracle - 协方差与行列式的线性代数参考实现

给出偏差界的精确行列式形式，并用数值线性代数核对闭式推导所依赖的各个恒等式。
"""

from .covariance import (
    build_covariance,
    inverse_identity_residual,
    inverse_tridiagonal,
    whitening_operator,
)
from .determinants import (
    continuant_closed_form,
    continuant_identity_lhs,
    det_quotient_monotonicity_check,
    determinant_bound,
    exact_det_bound,
    leading_minor_log_pivots,
    log_exact_det_bound,
    tridiag_det_sequence,
)
from .models import CovarianceKind, CovarianceMatrix, DeterminantSequence, TridiagonalSpec
from .spectral import (
    numerical_eigenvalues,
    perturbed_tridiag_eigenvalues,
    perturbed_tridiag_matrix,
    szego_log_factor,
    szego_quadrature,
    variance_integral_quadrature,
)

__all__ = [
    # Models
    "CovarianceKind",
    "CovarianceMatrix",
    "TridiagonalSpec",
    "DeterminantSequence",
    # Covariance
    "build_covariance",
    "whitening_operator",
    "inverse_tridiagonal",
    "inverse_identity_residual",
    # Determinants
    "exact_det_bound",
    "log_exact_det_bound",
    "determinant_bound",
    "tridiag_det_sequence",
    "continuant_identity_lhs",
    "continuant_closed_form",
    "leading_minor_log_pivots",
    "det_quotient_monotonicity_check",
    # Spectral
    "perturbed_tridiag_eigenvalues",
    "perturbed_tridiag_matrix",
    "numerical_eigenvalues",
    "szego_log_factor",
    "szego_quadrature",
    "variance_integral_quadrature",
]
