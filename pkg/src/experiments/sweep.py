"""
网格扫描

每个 (a0, N) 单元运行一次 Monte Carlo，同一批运行服务整个 eps 网格；
各单元使用相同的 base_seed（公共随机数），曲面因此关于 eps 精确单调。
"""

import logging
from collections.abc import Iterator
from pathlib import Path
from typing import Any

from ..bounds import DeviationQuery, deviation_bound
from ..monte_carlo import McConfig, McEstimate, estimate_deviation_probs
from ..oracle import exact_det_bound
from ..process import Ar1Params, Regime
from .csv_output import write_csv
from .models import SweepSpec

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = (
    "a0",
    "eps",
    "N",
    "runs",
    "empirical_prob",
    "ci_low",
    "ci_high",
    "std_err",
    "bound_closed",
    "bound_det_exact",
    "regime",
)


def cell_config(
    a0: float, n_samples: int, runs: int, base_seed: int, sigma: float, eps_grid: tuple[float, ...]
) -> McConfig:
    """单个 (a0, N) 单元的 Monte Carlo 配置"""
    params = Ar1Params(a0=a0, sigma=sigma, regime=Regime.for_a0(a0))
    return McConfig(
        params=params,
        n_samples=n_samples,
        runs=runs,
        base_seed=base_seed,
        eps_grid=eps_grid,
    )


def deviation_row(
    a0: float, n_samples: int, sigma: float, estimate: McEstimate, regime: Regime
) -> dict[str, Any]:
    """一行：经验概率及两种界"""
    eps = estimate.eps if estimate.eps is not None else 0.0
    query = DeviationQuery(a0=a0, eps=eps, n_samples=n_samples)
    return {
        "a0": a0,
        "eps": eps,
        "N": n_samples,
        "runs": estimate.runs,
        "empirical_prob": estimate.value,
        "ci_low": estimate.ci_low,
        "ci_high": estimate.ci_high,
        "std_err": estimate.std_err,
        "bound_closed": deviation_bound(query).value,
        "bound_det_exact": exact_det_bound(a0, sigma, eps, n_samples),
        "regime": regime.value,
    }


def sweep_rows(spec: SweepSpec, workers: int | None = None) -> Iterator[dict[str, Any]]:
    """按 (a0, eps, N) 字典序产生 CSV 行"""
    for a0 in spec.a0_list:
        regime = Regime.for_a0(a0)
        by_n = {}
        for n in spec.n_list:
            cfg = cell_config(a0, n, spec.runs, spec.base_seed, spec.sigma, spec.eps_list)
            by_n[n] = estimate_deviation_probs(cfg, workers=workers)
        for i in range(len(spec.eps_list)):
            for n in spec.n_list:
                yield deviation_row(a0, n, spec.sigma, by_n[n][i], regime)


def run_sweep(spec: SweepSpec, workers: int | None = None) -> Path:
    """
    执行扫描并写出 CSV

    Raises:
        DomainError: 参数越界
        OSError: 写文件失败（不会留下残缺文件）
    """
    logger.info(
        f"开始扫描: {len(spec.a0_list)} 个 a0 × {len(spec.eps_list)} 个 eps × "
        f"{len(spec.n_list)} 个 N, runs={spec.runs}"
    )
    path = write_csv(spec.output_path, SWEEP_COLUMNS, sweep_rows(spec, workers))
    logger.info(f"扫描完成: {path}")
    return path
