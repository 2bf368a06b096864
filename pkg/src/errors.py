"""
arbound 异常层级

所有异常同时继承对应的内置异常，调用方按内置类型捕获依然有效。
"""


class ArboundError(Exception):
    """arbound 异常基类"""


class DomainError(ArboundError, ValueError):
    """参数超出定义域（前置条件不满足）"""


class RegimeMismatch(DomainError):
    """a0 与声明的稳定/不稳定区间不一致"""


class SampleOverflow(ArboundError, OverflowError):
    """数值超出浮点可表示范围"""


class DegenerateDenominator(ArboundError, ZeroDivisionError):
    """最小二乘分母为零（y_1..y_{N-1} 全为零）"""


class NumericalFailure(ArboundError, ArithmeticError):
    """矩阵分解或数值积分失败"""
