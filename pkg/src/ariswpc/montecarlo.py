"""Monte Carlo oracle: direct simulation of the instantaneous SINR.

Estimators stream over fixed-width chunks (see channel.CHUNK_SAMPLES);
chunk i draws from SeedSequence((seed, i)) and per-chunk accumulators are
merged in index order, so a given (cfg, alpha, n, seed) always produces the
bit-identical estimate, with any number of workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import ChannelBatch, ChannelDraw, chunk_rng, chunk_sizes, sample_batch
from .config import SystemConfig, harvested_power_coefficient

__all__ = [
    "Estimate",
    "simulate_sinr",
    "mc_ergodic_rate",
    "mc_outage",
    "mc_moments_x",
]


@dataclass(frozen=True)
class Estimate:
    """Point estimate with its standard error and provenance."""

    value: float
    stderr: float
    n: int
    seed: int


def _sinr_batch(cfg: SystemConfig, batch: ChannelBatch, nu1: float) -> np.ndarray:
    rho = cfg.rho_effective
    cascade = rho * batch.g_mag * batch.h_mag
    re = batch.f_mag + np.sum(cascade * np.cos(batch.phase_err), axis=1)
    im = np.sum(cascade * np.sin(batch.phase_err), axis=1)
    denom = cfg.sigma_v2_mw * np.sum(rho**2 * batch.g_mag**2, axis=1) + cfg.sigma_n2_mw
    return nu1 * batch.h_p_mag**2 * (re**2 + im**2) / denom


def simulate_sinr(cfg: SystemConfig, draw: ChannelDraw, alpha: float) -> float:
    """Instantaneous SINR for one channel realization."""
    for name in ("h_mag", "g_mag", "phase_err"):
        if len(getattr(draw, name)) != cfg.M:
            raise ValueError(f"draw.{name} has length {len(getattr(draw, name))}, expected M={cfg.M}")
    nu1 = harvested_power_coefficient(cfg, alpha)
    batch = ChannelBatch(
        h_p_mag=np.atleast_1d(draw.h_p_mag),
        f_mag=np.atleast_1d(draw.f_mag),
        h_mag=np.atleast_2d(draw.h_mag),
        g_mag=np.atleast_2d(draw.g_mag),
        phase_err=np.atleast_2d(draw.phase_err),
    )
    return float(_sinr_batch(cfg, batch, nu1)[0])


def _run_chunks(chunk_fn, seed: int, n: int, workers: int) -> list:
    """Evaluate chunk_fn(rng, size) per chunk; results in chunk order."""
    sizes = chunk_sizes(n)
    if workers <= 1 or len(sizes) == 1:
        return [chunk_fn(chunk_rng(seed, i), m) for i, m in enumerate(sizes)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(chunk_fn, chunk_rng(seed, i), m) for i, m in enumerate(sizes)]
        return [f.result() for f in futures]


def _merge_mean_var(parts: list[tuple[int, float, float]]) -> tuple[int, float, float]:
    """Combine per-chunk (count, mean, sum of squared deviations)."""
    n, mean, m2 = parts[0]
    for nb, mb, m2b in parts[1:]:
        delta = mb - mean
        total = n + nb
        mean += delta * nb / total
        m2 += m2b + delta**2 * n * nb / total
        n = total
    return n, mean, m2


def mc_ergodic_rate(
    cfg: SystemConfig,
    alpha: float,
    n: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> Estimate:
    """Sample mean of (1-alpha) log2(1 + SINR) over n realizations."""
    nu1 = harvested_power_coefficient(cfg, alpha)
    if n is None:
        n = cfg.mc_samples
    if n < 100:
        raise ValueError("n must be >= 100")

    def one_chunk(rng, m):
        rate = (1.0 - alpha) * np.log2(1.0 + _sinr_batch(cfg, sample_batch(cfg, rng, m), nu1))
        mean = float(rate.mean())
        return m, mean, float(((rate - mean) ** 2).sum())

    total, mean, m2 = _merge_mean_var(_run_chunks(one_chunk, seed, n, workers))
    return Estimate(value=mean, stderr=math.sqrt(m2 / (total - 1) / total), n=total, seed=seed)


def mc_outage(
    cfg: SystemConfig,
    alpha: float,
    n: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> Estimate:
    """Fraction of realizations with (1-alpha) log2(1 + SINR) < r_v."""
    nu1 = harvested_power_coefficient(cfg, alpha)
    if n is None:
        n = cfg.mc_samples
    if n < 100:
        raise ValueError("n must be >= 100")

    def one_chunk(rng, m):
        rate = (1.0 - alpha) * np.log2(1.0 + _sinr_batch(cfg, sample_batch(cfg, rng, m), nu1))
        return int(np.count_nonzero(rate < cfg.r_v))

    outages = sum(_run_chunks(one_chunk, seed, n, workers))
    p = outages / n
    return Estimate(value=p, stderr=math.sqrt(p * (1.0 - p) / n), n=n, seed=seed)


def mc_moments_x(
    cfg: SystemConfig,
    n: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> tuple[Estimate, Estimate]:
    """Empirical (mean, variance) of X = |f| + sum rho|g||h| cos(phase error).

    The variance estimate's standard error uses the asymptotic
    fourth-central-moment formula sqrt((m4 - m2^2)/n).
    """
    if n is None:
        n = cfg.mc_samples
    if n < 1000:
        raise ValueError("n must be >= 1000")
    rho = cfg.rho_effective

    def one_chunk(rng, m):
        batch = sample_batch(cfg, rng, m)
        x = batch.f_mag + np.sum(rho * batch.g_mag * batch.h_mag * np.cos(batch.phase_err), axis=1)
        return np.array([float((x**k).sum()) for k in (1, 2, 3, 4)])

    sums = np.sum(_run_chunks(one_chunk, seed, n, workers), axis=0)
    mean = float(sums[0] / n)
    m2 = float(sums[1] / n - mean**2)
    m4 = float(sums[3] / n - 4 * mean * sums[2] / n + 6 * mean**2 * sums[1] / n - 3 * mean**4)
    var = m2 * n / (n - 1)
    mean_est = Estimate(value=mean, stderr=math.sqrt(var / n), n=n, seed=seed)
    var_est = Estimate(value=var, stderr=math.sqrt(max(m4 - m2**2, 0.0) / n), n=n, seed=seed)
    return mean_est, var_est
