"""
Validation - 恒等式与占优检查的注册表
"""

from .base import BaseCheck, CheckRegistry, CheckResult
from .checks import default_registry

__all__ = [
    "BaseCheck",
    "CheckRegistry",
    "CheckResult",
    "default_registry",
]
