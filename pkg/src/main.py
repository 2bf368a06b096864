"""
arbound - Command Line Entry

AR(1) 最小二乘估计的有限样本界：界查询、轨迹仿真、网格扫描、恒等式验证与仿真曲面重现。
标准输出只写 JSON/CSV 结果，日志写到标准错误。
"""

import argparse
import json
import logging
import math
import sys
from collections.abc import Callable, Sequence
from typing import Any

from config.sweep_config import get_sweep_config, load_config_file

from .bounds import (
    BoundKind,
    BoundValue,
    DeviationQuery,
    Provenance,
    cramer_rao_asymptote,
    deviation_bound,
    relaxed_unstable_bound,
    stable_deviation_bound,
    stable_variance_bound,
    unstable_deviation_bound,
    unstable_variance_bound,
    variance_bound,
)
from .config import get_settings
from .errors import ArboundError, DomainError
from .experiments import Figure, SweepSpec, reproduce, run_sweep
from .oracle import determinant_bound
from .process import Ar1Params, Regime, ls_estimate, simulate, simulate_from_initial
from .validation import default_registry

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


# =============================================================================
# Logging Configuration
# =============================================================================


class JsonFormatter(logging.Formatter):
    """每条日志输出一个 JSON 对象"""

    def format(self, record: logging.LogRecord) -> str:
        return json.dumps(
            {
                "timestamp": self.formatTime(record),
                "logger": record.name,
                "level": record.levelname,
                "message": record.getMessage(),
            },
            ensure_ascii=False,
        )


def setup_logging(level: str = "INFO", fmt: str = "text") -> None:
    """配置日志，输出到 stderr"""
    handler = logging.StreamHandler(sys.stderr)
    if fmt == "json":
        handler.setFormatter(JsonFormatter())
    else:
        handler.setFormatter(
            logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        )
    logging.basicConfig(level=getattr(logging, level.upper()), handlers=[handler], force=True)


# =============================================================================
# Option resolution (flags > --config file > profile)
# =============================================================================


class Options:
    """按优先级合并命令行参数、--config 文件与 profile 默认值"""

    def __init__(self, args: argparse.Namespace, section: str | None = None):
        self.args = args
        self.file_values = load_config_file(args.config) if args.config else {}
        self.profile = get_sweep_config(args.profile)
        self.section = section

    def get(self, key: str, default: Any = None) -> Any:
        flag = getattr(self.args, key, None)
        if flag is not None:
            return flag
        if key in self.file_values:
            return self.file_values[key]
        if self.section is None:
            return default
        return self.profile.get(f"{self.section}.{key}", default)

    def require(self, key: str) -> Any:
        value = self.get(key)
        if value is None:
            raise DomainError(f"缺少参数 --{key}")
        return value

    def get_list(self, key: str, cast: Callable[[Any], Any]) -> tuple:
        value = self.require(key)
        if isinstance(value, list | tuple):
            return tuple(cast(v) for v in value)
        return (cast(value),)


def _emit_json(payload: Any) -> None:
    print(json.dumps(payload, ensure_ascii=False))


# =============================================================================
# bound
# =============================================================================


def _cramer_rao(a0: float, n_samples: int) -> BoundValue:
    value = cramer_rao_asymptote(a0, n_samples)
    return BoundValue(
        value=value,
        log_value=math.log(value),
        kind=BoundKind.CRAMER_RAO_ASYMPTOTIC,
        provenance=Provenance.REFERENCE,
        a0=a0,
        n_samples=n_samples,
    )


DEVIATION_KINDS: dict[str, Callable[[DeviationQuery, float], BoundValue]] = {
    "dev": lambda q, sigma: deviation_bound(q),
    "stable-dev": lambda q, sigma: stable_deviation_bound(q),
    "unstable-dev": lambda q, sigma: unstable_deviation_bound(q),
    "relaxed-dev": lambda q, sigma: relaxed_unstable_bound(q),
    "det-exact": lambda q, sigma: determinant_bound(q, sigma),
}

VARIANCE_KINDS: dict[str, Callable[[float, int], BoundValue]] = {
    "var": variance_bound,
    "stable-var": stable_variance_bound,
    "unstable-var": unstable_variance_bound,
    "cramer-rao": _cramer_rao,
}


def cmd_bound(args: argparse.Namespace) -> int:
    """打印一个界的 JSON 对象"""
    opts = Options(args)
    a0 = float(opts.require("a0"))
    n_samples = int(opts.require("n"))

    if args.kind in DEVIATION_KINDS:
        eps = opts.get("eps")
        if eps is None:
            raise DomainError("偏差界需要 --eps")
        query = DeviationQuery(a0=a0, eps=float(eps), n_samples=n_samples)
        bound = DEVIATION_KINDS[args.kind](query, float(opts.get("sigma", 1.0)))
    else:
        bound = VARIANCE_KINDS[args.kind](a0, n_samples)

    _emit_json(bound.model_dump(mode="json"))
    return EXIT_OK


# =============================================================================
# simulate
# =============================================================================


def cmd_simulate(args: argparse.Namespace) -> int:
    """生成一条轨迹并打印最小二乘估计"""
    opts = Options(args)
    a0 = float(opts.require("a0"))
    n_samples = int(opts.require("n"))
    params = Ar1Params(
        a0=a0,
        sigma=float(opts.get("sigma", 1.0)),
        regime=Regime.for_a0(a0),
        seed=int(opts.get("seed", 0)),
    )
    if args.y1 is not None:
        trajectory = simulate_from_initial(params, n_samples, args.y1)
    else:
        trajectory = simulate(params, n_samples)
    estimate = ls_estimate(trajectory)

    payload: dict[str, Any] = {
        "a0": params.a0,
        "sigma": params.sigma,
        "N": n_samples,
        "seed": params.seed,
        "regime": params.regime.value,
        "a_hat": estimate.a_hat,
        "error": estimate.a_hat - params.a0,
        "denominator": estimate.denominator,
        "y_first": trajectory.samples[0],
        "y_last": trajectory.samples[-1],
    }
    if args.samples:
        payload["samples"] = list(trajectory.samples)
    _emit_json(payload)
    return EXIT_OK


# =============================================================================
# sweep
# =============================================================================


def cmd_sweep(args: argparse.Namespace) -> int:
    """(a0, eps, N) 网格扫描，写出 CSV"""
    opts = Options(args, section="sweep")
    spec = SweepSpec(
        a0_list=opts.get_list("a0", float),
        eps_list=opts.get_list("eps", float),
        n_list=opts.get_list("n", int),
        runs=int(opts.require("runs")),
        base_seed=int(opts.get("seed", 0)),
        sigma=float(opts.get("sigma", 1.0)),
        output_path=str(opts.require("out")),
    )
    workers = opts.get("workers")
    path = run_sweep(spec, workers=int(workers) if workers is not None else None)
    _emit_json({"output": str(path), "rows": spec.cells})
    return EXIT_OK


# =============================================================================
# validate
# =============================================================================


def cmd_validate(args: argparse.Namespace) -> int:
    """执行全部恒等式/占优检查"""
    registry = default_registry()
    results = registry.run_all(fault=args.fault)

    if args.json:
        _emit_json([r.to_report() for r in results])
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status}  {r.check:<24} residual={r.residual:.3e}  tolerance={r.tolerance:.1e}"
            print(line if r.detail is None else f"{line}  ({r.detail})")

    failed = [r.check for r in results if not r.passed]
    if failed:
        logger.error(f"未通过的检查: {', '.join(failed)}")
        return EXIT_VALIDATION_FAILED
    return EXIT_OK


# =============================================================================
# reproduce
# =============================================================================


def cmd_reproduce(args: argparse.Namespace) -> int:
    """重现 fig1 / fig2 的 CSV 数据"""
    opts = Options(args, section="reproduce")
    workers = opts.get("workers")
    paths = reproduce(
        Figure(args.figure),
        runs=int(opts.require("runs")),
        base_seed=int(opts.get("seed", 0)),
        out_dir=str(opts.require("out")),
        sigma=float(opts.get("sigma", 1.0)),
        workers=int(workers) if workers is not None else None,
    )
    _emit_json([str(p) for p in paths])
    return EXIT_OK


# =============================================================================
# Argument parsing
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    """构造命令行解析器"""
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="arbound",
        description="AR(1) 最小二乘估计的有限样本偏差概率界与方差界",
    )
    parser.add_argument("--log-level", default=None, help="日志级别（默认取 ARBOUND_LOG_LEVEL）")
    parser.add_argument(
        "--profile", default=settings.default_profile, help="sweep/reproduce 默认值所用的 profile"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="扁平 YAML 键值文件，命令行参数优先")
    common.add_argument("--sigma", type=float, default=None, help="噪声标准差（默认 1）")

    pb = sub.add_parser("bound", parents=[common], help="计算一个界")
    pb.add_argument("kind", choices=sorted([*DEVIATION_KINDS, *VARIANCE_KINDS]))
    pb.add_argument("--a0", type=float, default=None)
    pb.add_argument("--eps", type=float, default=None)
    pb.add_argument("--n", type=int, default=None)
    pb.set_defaults(handler=cmd_bound)

    ps = sub.add_parser("simulate", parents=[common], help="生成一条轨迹并估计 a0")
    ps.add_argument("--a0", type=float, default=None)
    ps.add_argument("--n", type=int, default=None)
    ps.add_argument("--seed", type=int, default=None)
    ps.add_argument("--y1", type=float, default=None, help="显式 y_1（零噪声测试钩子）")
    ps.add_argument("--samples", action="store_true", help="输出完整轨迹")
    ps.set_defaults(handler=cmd_simulate)

    pw = sub.add_parser("sweep", parents=[common], help="(a0, eps, N) 网格扫描")
    pw.add_argument("--a0", type=float, nargs="+", default=None)
    pw.add_argument("--eps", type=float, nargs="+", default=None)
    pw.add_argument("--n", type=int, nargs="+", default=None)
    pw.add_argument("--runs", type=int, default=None)
    pw.add_argument("--seed", type=int, default=None)
    pw.add_argument("--workers", type=int, default=None, help="进程数（默认按 CPU 数）")
    pw.add_argument("--out", default=None, help="CSV 输出路径")
    pw.set_defaults(handler=cmd_sweep)

    pv = sub.add_parser("validate", help="执行恒等式与占优检查")
    pv.add_argument("--json", action="store_true", help="输出 JSON 报告")
    pv.add_argument("--fault", default=None, help=argparse.SUPPRESS)
    pv.set_defaults(handler=cmd_validate)

    pr = sub.add_parser(
        "reproduce",
        parents=[common],
        help="重现仿真曲面",
        description=(
            "fig1：eps 取 0.01..5 的 20 个对数等距点，N 取 2..100 的 13 个对数等距整数；"
            "fig2：N 取 7..1000 的 25 个对数等距整数。"
        ),
    )
    pr.add_argument("figure", choices=[f.value for f in Figure])
    pr.add_argument("--runs", type=int, default=None, help="每个单元的运行次数（≥ 1000）")
    pr.add_argument("--seed", type=int, default=None)
    pr.add_argument("--workers", type=int, default=None)
    pr.add_argument("--out", default=None, help="输出目录")
    pr.set_defaults(handler=cmd_reproduce)

    return parser


def _one_line(error: BaseException) -> str:
    return " ".join(str(error).split())


def main(argv: Sequence[str] | None = None) -> int:
    """
    命令行入口

    Returns:
        0 成功，1 验证未通过，2 用法/定义域错误，3 I/O 错误
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    settings = get_settings()
    setup_logging(args.log_level or settings.log_level, settings.log_format)

    try:
        return args.handler(args)
    except OSError as e:
        print(f"arbound: I/O error: {_one_line(e)}", file=sys.stderr)
        return EXIT_IO
    except (ArboundError, ValueError, KeyError, ArithmeticError) as e:
        print(f"arbound: error: {_one_line(e)}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
