"""Active-RIS reflection model: quantized phases and cascade moments."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as gamma_fn

__all__ = [
    "PhaseErrorStats",
    "quantize_phase",
    "phase_error_stats",
    "cascade_moment",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhaseErrorStats:
    """Trigonometric moments of the uniform quantization residual.

    For b quantization bits the residual is uniform on [-tau, tau) with
    tau = pi*2^-b, giving E{cos} = sin(tau)/tau,
    E{cos^2} = sin(2 tau)/(4 tau) + 1/2 and E{sin^2} = 1 - E{cos^2}.
    E{sin} vanishes by symmetry.
    """

    tau: float
    e_cos: float
    e_cos2: float
    e_sin2: float


def phase_error_stats(b: int) -> PhaseErrorStats:
    if b < 1:
        raise ValueError("b must be >= 1")
    tau = math.pi * 2.0 ** (-b)
    e_cos = math.sin(tau) / tau
    e_cos2 = math.sin(2.0 * tau) / (4.0 * tau) + 0.5
    return PhaseErrorStats(tau=tau, e_cos=e_cos, e_cos2=e_cos2, e_sin2=1.0 - e_cos2)


def quantize_phase(theta_star: float, b: int) -> float:
    """Nearest b-bit phase to theta_star in circular distance.

    The grid is {0, 2pi/2^b, ..., (2^b-1)*2pi/2^b}. Distance ties (exact to
    within fp tolerance) are broken toward the smaller phase value.
    """
    if b < 1:
        raise ValueError("b must be >= 1")
    levels = 1 << b
    grid = _TWO_PI * np.arange(levels) / levels
    diff = np.mod(theta_star - grid + math.pi, _TWO_PI) - math.pi
    dist = np.abs(diff)
    winners = np.flatnonzero(dist <= dist.min() + 1e-12)
    return float(grid[winners[0]])


def cascade_moment(n: int, rho_m: float, zeta_g: float, zeta_h: float) -> float:
    """n-th moment of the amplified cascaded magnitude rho*|g_m|*|h_m|.

    Independent Rayleigh factors give
    rho^n * (zeta_g*zeta_h)^(n/2) * Gamma(n/2 + 1)^2.
    """
    if n < 1:
        raise ValueError("moment order must be >= 1")
    return float(
        rho_m**n * (zeta_g * zeta_h) ** (n / 2.0) * gamma_fn(n / 2.0 + 1.0) ** 2
    )
