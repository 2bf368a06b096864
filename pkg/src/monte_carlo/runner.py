"""
Monte Carlo Runner

把 runs 次独立运行按固定大小分块交给进程池。第 r 次运行的种子只由 (base_seed, r)
决定，块大小固定且结果按运行序号拼接，因此估计值与进程数无关。
"""

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..config import get_settings
from ..errors import DomainError
from ..process import Ar1Params, derive_run_seed, ls_estimate_batch, simulate_batch
from .intervals import normal_interval, proportion_std_err, wilson_interval
from .models import McConfig, McEstimate, Statistic, Tail

logger = logging.getLogger(__name__)

# 方差估计在 N < 7 时可能不存在
HEAVY_TAIL_MAX_N = 6


def _run_chunk(
    params: Ar1Params, n_samples: int, seeds: Sequence[int], initial_value: float | None
) -> np.ndarray:
    """一块运行的 a_hat - a0，分母退化的运行为 NaN"""
    samples = simulate_batch(params, n_samples, seeds, initial_value=initial_value)
    a_hat, _ = ls_estimate_batch(samples)
    return a_hat - params.a0


def _chunk_seeds(cfg: McConfig, chunk_size: int) -> list[list[int]]:
    seeds = [derive_run_seed(cfg.base_seed, r) for r in range(cfg.runs)]
    return [seeds[i : i + chunk_size] for i in range(0, cfg.runs, chunk_size)]


def collect_deviations(
    cfg: McConfig, workers: int | None = None, chunk_size: int | None = None
) -> np.ndarray:
    """
    按运行序号返回全部 a_hat - a0

    Args:
        cfg: 实验配置
        workers: 进程数，None 取配置值；1 表示在当前进程内执行
        chunk_size: 每个任务的运行次数，None 取配置值
    """
    settings = get_settings()
    workers = workers if workers is not None else settings.resolved_workers
    chunk_size = chunk_size if chunk_size is not None else settings.mc_chunk_size
    if workers < 1:
        raise DomainError(f"workers 必须 ≥ 1: workers={workers}")

    chunks = _chunk_seeds(cfg, chunk_size)
    args = [(cfg.params, cfg.n_samples, seeds, cfg.initial_value) for seeds in chunks]
    logger.debug(f"{cfg.runs} 次运行分为 {len(chunks)} 块，进程数 {workers}")

    if workers == 1 or len(chunks) == 1:
        results = [_run_chunk(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(chunks))) as pool:
            # map 按提交顺序返回
            results = list(pool.map(_run_chunk, *zip(*args)))
    return np.concatenate(results)


def _split_failures(deviations: np.ndarray) -> tuple[np.ndarray, int]:
    valid = deviations[~np.isnan(deviations)]
    failed = int(deviations.size - valid.size)
    if failed:
        logger.warning(f"{failed} 次运行的最小二乘分母退化，已从统计中剔除")
    return valid, failed


def deviation_probs_from(
    deviations: np.ndarray, eps_grid: Sequence[float], tail: Tail = Tail.UPPER
) -> list[McEstimate]:
    """由已有的偏差样本计算整个 eps 网格上的经验概率"""
    valid, failed = _split_failures(deviations)
    trials = int(valid.size)

    estimates = []
    for eps in eps_grid:
        if tail is Tail.UPPER:
            hits = int(np.count_nonzero(valid > eps))
        else:
            hits = int(np.count_nonzero(valid < -eps))
        ci_low, ci_high = wilson_interval(hits, trials)
        estimates.append(
            McEstimate(
                statistic=Statistic.DEVIATION_PROB,
                eps=eps,
                tail=tail,
                value=hits / trials if trials else 0.0,
                runs=trials,
                failed_runs=failed,
                std_err=proportion_std_err(hits, trials),
                ci_low=ci_low,
                ci_high=ci_high,
            )
        )
    return estimates


def variance_from(deviations: np.ndarray, n_samples: int) -> McEstimate:
    """(a_hat - a0)^2 的样本均值，标准误差由四阶矩估计"""
    valid, failed = _split_failures(deviations)
    trials = int(valid.size)
    heavy_tail = n_samples <= HEAVY_TAIL_MAX_N
    if heavy_tail:
        logger.warning(f"N={n_samples} < 7，经验方差可能不收敛")

    if trials == 0:
        return McEstimate(
            statistic=Statistic.VARIANCE,
            value=0.0,
            runs=0,
            failed_runs=failed,
            std_err=0.0,
            ci_low=0.0,
            ci_high=math.inf,
            heavy_tail=heavy_tail,
        )

    squares = valid * valid
    m2 = math.fsum(squares) / trials
    m4 = math.fsum(squares * squares) / trials
    std_err = math.sqrt(max(m4 - m2 * m2, 0.0) / trials)
    ci_low, ci_high = normal_interval(m2, std_err)
    return McEstimate(
        statistic=Statistic.VARIANCE,
        value=m2,
        runs=trials,
        failed_runs=failed,
        std_err=std_err,
        ci_low=min(ci_low, m2),
        ci_high=max(ci_high, m2),
        heavy_tail=heavy_tail,
    )


def estimate_deviation_probs(
    cfg: McConfig, workers: int | None = None, tail: Tail | str = Tail.UPPER
) -> list[McEstimate]:
    """
    eps 网格上的经验偏差概率 P(a_hat - a0 > eps)

    一次遍历全部运行即可得到整个网格；tail="lower" 时估计 P(a_hat - a0 < -eps)。
    """
    if not cfg.eps_grid:
        raise DomainError("eps 网格不能为空")
    deviations = collect_deviations(cfg, workers)
    estimates = deviation_probs_from(deviations, cfg.eps_grid, Tail(tail))
    logger.info(
        f"偏差概率 a0={cfg.params.a0} N={cfg.n_samples} runs={cfg.runs}: "
        f"eps={cfg.eps_grid[0]} -> {estimates[0].value:.4g}"
    )
    return estimates


def estimate_variance(cfg: McConfig, workers: int | None = None) -> McEstimate:
    """经验方差 E[(a_hat - a0)^2]"""
    estimate = variance_from(collect_deviations(cfg, workers), cfg.n_samples)
    logger.info(
        f"经验方差 a0={cfg.params.a0} N={cfg.n_samples} runs={cfg.runs}: {estimate.value:.4g}"
    )
    return estimate
