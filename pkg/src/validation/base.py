"""
Base Check Interface

每个恒等式/占优检查给出一个最差残差和容差，注册表统一执行并汇总。
"""

import logging
import math
import time
from abc import ABC, abstractmethod
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    """检查结果的标准格式"""

    model_config = ConfigDict(populate_by_name=True)

    check: str = Field(..., description="检查名称")
    passed: bool = Field(..., alias="pass", description="是否通过")
    residual: float = Field(..., description="最差残差")
    tolerance: float = Field(..., description="容差")
    detail: str | None = Field(None, description="补充信息或错误")
    execution_time: float = Field(default=0.0, description="执行时间（秒）")

    def to_report(self) -> dict[str, Any]:
        """{check, pass, residual, tolerance}"""
        return self.model_dump(by_alias=True, include={"check", "passed", "residual", "tolerance"})


class BaseCheck(ABC):
    """
    检查基类

    子类实现 measure()，返回在整个参数网格上的最差残差。
    """

    name: str = "base_check"
    description: str = ""
    tolerance: float = 0.0
    supports_fault: bool = False

    @abstractmethod
    def measure(self, fault: bool = False) -> float:
        """
        计算最差残差

        Args:
            fault: 故障注入开关，只有支持的检查会使用
        """
        raise NotImplementedError

    def passes(self, residual: float) -> bool:
        """默认规则：residual ≤ tolerance"""
        return residual <= self.tolerance

    def __call__(self, fault: bool = False) -> CheckResult:
        start = time.time()
        try:
            residual = float(self.measure(fault=fault))
            detail = None
        except (ArithmeticError, ValueError) as e:
            logger.error(f"检查 {self.name} 执行失败: {e}")
            residual, detail = math.inf, str(e)

        passed = not math.isnan(residual) and self.passes(residual) and detail is None
        return CheckResult(
            check=self.name,
            passed=passed,
            residual=residual,
            tolerance=self.tolerance,
            detail=detail,
            execution_time=time.time() - start,
        )


class CheckRegistry:
    """检查注册表"""

    def __init__(self):
        self._checks: dict[str, BaseCheck] = {}

    def register(self, check: BaseCheck) -> None:
        """注册一个检查"""
        self._checks[check.name] = check

    def get(self, name: str) -> BaseCheck | None:
        """按名称获取检查"""
        return self._checks.get(name)

    def list_checks(self) -> list[str]:
        """按注册顺序列出检查名称"""
        return list(self._checks.keys())

    def run(self, name: str, fault: bool = False) -> CheckResult:
        """执行单个检查"""
        check = self.get(name)
        if check is None:
            raise KeyError(f"检查 '{name}' 未找到")
        return check(fault=fault)

    def run_all(self, fault: str | None = None) -> list[CheckResult]:
        """
        依次执行全部检查

        Args:
            fault: 需要注入故障的检查名称
        """
        if fault is not None and fault not in self._checks:
            raise KeyError(f"检查 '{fault}' 未找到")
        if fault is not None and not self._checks[fault].supports_fault:
            raise ValueError(f"检查 '{fault}' 不支持故障注入")

        results = []
        for name, check in self._checks.items():
            result = check(fault=name == fault)
            status = "PASS" if result.passed else "FAIL"
            logger.info(
                f"{status} {name}: residual={result.residual:.3e} tol={result.tolerance:.1e}"
            )
            results.append(result)
        return results
