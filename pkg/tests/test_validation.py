"""
Identity Check Unit Tests
"""

import math

import pytest

from src.validation import BaseCheck, CheckRegistry, CheckResult, default_registry

CHECK_NAMES = [
    "szego_quadrature",
    "szego_quotient_limit",
    "continuant_identity",
    "tridiag_determinants",
    "inverse_residual",
    "perturbed_eigenvalues",
    "quotient_monotonicity",
    "unstable_equality",
    "stable_dominance",
    "determinant_methods",
    "variance_quadrature",
    "variance_full_bound",
    "variance_reassembly",
    "regime_change_margin",
    "root_gaps",
    "bound_monotonicity",
]


class ConstantCheck(BaseCheck):
    """返回固定残差的检查"""

    name = "constant"
    tolerance = 1e-3
    supports_fault = True

    def __init__(self, residual: float):
        self.residual = residual

    def measure(self, fault: bool = False) -> float:
        return 1.0 if fault else self.residual


class ExplodingCheck(BaseCheck):
    name = "exploding"
    tolerance = 1.0

    def measure(self, fault: bool = False) -> float:
        raise ZeroDivisionError("boom")


class TestCheckRegistry:
    """测试检查注册表"""

    def test_default_registry_order(self):
        assert default_registry().list_checks() == CHECK_NAMES

    def test_register_and_run(self):
        registry = CheckRegistry()
        registry.register(ConstantCheck(1e-6))
        result = registry.run("constant")
        assert isinstance(result, CheckResult)
        assert result.passed
        assert result.residual == 1e-6

    def test_unknown_check(self):
        with pytest.raises(KeyError):
            CheckRegistry().run("missing")

    def test_unknown_fault(self):
        registry = CheckRegistry()
        registry.register(ConstantCheck(0.0))
        with pytest.raises(KeyError):
            registry.run_all(fault="missing")

    def test_fault_requires_support(self):
        """不读取 fault 的检查不能被注入故障"""
        registry = CheckRegistry()
        registry.register(ExplodingCheck())
        with pytest.raises(ValueError, match="exploding"):
            registry.run_all(fault="exploding")

    def test_only_continuant_supports_fault(self):
        registry = default_registry()
        supported = [n for n in registry.list_checks() if registry.get(n).supports_fault]
        assert supported == ["continuant_identity"]

    def test_fault_only_hits_named_check(self):
        registry = CheckRegistry()
        registry.register(ConstantCheck(0.0))
        registry.register(ExplodingCheck())
        results = {r.check: r for r in registry.run_all(fault="constant")}
        assert not results["constant"].passed
        assert results["constant"].residual == 1.0

    def test_exception_becomes_failure(self):
        result = ExplodingCheck()()
        assert not result.passed
        assert math.isinf(result.residual)
        assert result.detail == "boom"

    def test_report_keys(self):
        report = ConstantCheck(0.5)().to_report()
        assert set(report) == {"check", "pass", "residual", "tolerance"}
        assert report["pass"] is False


class TestDefaultChecks:
    """测试默认检查全部通过"""

    @pytest.mark.parametrize("name", CHECK_NAMES)
    def test_check_passes(self, name):
        result = default_registry().run(name)
        assert result.passed, f"{name}: residual={result.residual} detail={result.detail}"

    def test_continuant_fault_detected(self):
        """连分式交叉项取反后检查失败"""
        result = default_registry().run("continuant_identity", fault=True)
        assert not result.passed
        assert result.residual > 1e-3
