"""Block-Rayleigh channel sampling and analytic Rayleigh moments.

Every link magnitude is the modulus of a zero-mean circularly-symmetric
complex Gaussian whose variance equals the link's path-loss coefficient
zeta, i.e. Rayleigh with scale sqrt(zeta/2). Phase-alignment residuals of
the RIS elements are uniform on [-pi*2^-b, pi*2^-b).

Sampling uses numpy's seedable PCG64 generator. For one generator, the
draw order is fixed: hub magnitude, direct magnitude, device->RIS row,
RIS->receiver row, phase residual row (each row in C order), so a fixed
seed reproduces the identical realization sequence on any platform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import SystemConfig

__all__ = [
    "CHUNK_SAMPLES",
    "ChannelDraw",
    "ChannelBatch",
    "chunk_sizes",
    "chunk_rng",
    "chunk_rngs",
    "rayleigh_magnitudes",
    "sample_realization",
    "sample_batch",
    "rayleigh_moments",
]

#: Fixed Monte Carlo chunk width. Chunk i of a run with root seed s draws
#: from default_rng(SeedSequence((s, i))); estimates are therefore functions
#: of (seed, n) alone, independent of how chunks are scheduled.
CHUNK_SAMPLES = 16384


@dataclass(frozen=True)
class ChannelDraw:
    """One joint realization of all fading magnitudes and phase residuals."""

    h_p_mag: float          # |h_p|, hub -> device (path loss included)
    f_mag: float            # |f|, direct device -> receiver
    h_mag: np.ndarray       # |h_m|, device -> RIS, shape (M,)
    g_mag: np.ndarray       # |g_m|, RIS -> receiver, shape (M,)
    phase_err: np.ndarray   # quantization residuals, shape (M,), radians


class ChannelBatch(NamedTuple):
    """Vectorized realizations with a leading sample axis."""

    h_p_mag: np.ndarray     # (n,)
    f_mag: np.ndarray       # (n,)
    h_mag: np.ndarray       # (n, M)
    g_mag: np.ndarray       # (n, M)
    phase_err: np.ndarray   # (n, M)


def chunk_sizes(n: int, chunk: int = CHUNK_SAMPLES) -> list[int]:
    """Split n samples into the fixed chunk widths (last one ragged)."""
    if n < 1:
        raise ValueError("sample count must be >= 1")
    return [min(chunk, n - start) for start in range(0, n, chunk)]


def chunk_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for chunk `index` of a run rooted at `seed`."""
    if seed < 0:
        raise ValueError("seed must be a non-negative integer")
    return np.random.default_rng(np.random.SeedSequence((seed, index)))


def chunk_rngs(seed: int, n: int, chunk: int = CHUNK_SAMPLES):
    """Yield (generator, chunk_size) pairs covering n samples in order."""
    for i, size in enumerate(chunk_sizes(n, chunk)):
        yield chunk_rng(seed, i), size


def rayleigh_magnitudes(rng: np.random.Generator, zeta, size) -> np.ndarray:
    """Draw |h| with E{|h|^2} = zeta (zeta may broadcast over the last axis)."""
    scale = np.sqrt(np.asarray(zeta, dtype=float) / 2.0)
    return rng.rayleigh(scale=scale, size=size)


def sample_batch(cfg: SystemConfig, rng: np.random.Generator, n: int) -> ChannelBatch:
    """Draw n independent joint realizations."""
    tau = math.pi * 2.0 ** (-cfg.b)
    return ChannelBatch(
        h_p_mag=rayleigh_magnitudes(rng, cfg.zeta_p, n),
        f_mag=rayleigh_magnitudes(rng, cfg.zeta_f, n),
        h_mag=rayleigh_magnitudes(rng, cfg.zeta_h, (n, cfg.M)),
        g_mag=rayleigh_magnitudes(rng, cfg.zeta_g, (n, cfg.M)),
        phase_err=rng.uniform(-tau, tau, size=(n, cfg.M)),
    )


def sample_realization(cfg: SystemConfig, rng: np.random.Generator) -> ChannelDraw:
    """Draw a single joint realization."""
    batch = sample_batch(cfg, rng, 1)
    return ChannelDraw(
        h_p_mag=float(batch.h_p_mag[0]),
        f_mag=float(batch.f_mag[0]),
        h_mag=batch.h_mag[0],
        g_mag=batch.g_mag[0],
        phase_err=batch.phase_err[0],
    )


def rayleigh_moments(zeta: float, n: int) -> float:
    """First or second moment of a Rayleigh magnitude with E{|h|^2} = zeta.

    n=1 returns sqrt(pi*zeta)/2, n=2 returns zeta.
    """
    if zeta < 0:
        raise ValueError("zeta must be >= 0")
    if n == 1:
        return math.sqrt(math.pi * zeta) / 2.0
    if n == 2:
        return float(zeta)
    raise ValueError(f"unsupported moment order {n}; expected 1 or 2")
