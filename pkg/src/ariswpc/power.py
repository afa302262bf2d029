"""RIS power-consumption model and its inverse in the time-switching factor.

Expected consumption is nu1(alpha) * amp_signal + amp_noise + static, with
amp_signal = sum rho^2 zeta_h, amp_noise = sigma_v^2 sum rho^2, and
static = M (P1 + P2). Two modes: "nominal" (default) applies the
harvested-power coefficient to the amplified signal directly, "physical"
additionally weights it by the hub->device link gain (|h_p|^2 per
realization, zeta_p in expectation). Passive mode has no amplifiers, so
both amplifier terms vanish and only the static term remains.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelDraw
from .config import RisMode, SystemConfig, harvested_power_coefficient

__all__ = [
    "PowerBudgetInfeasibleError",
    "PowerBudgetInactiveError",
    "PowerModel",
    "power_model",
    "expected_power",
    "instantaneous_power",
    "inverse_power",
]

_MODES = ("nominal", "physical")


class PowerBudgetInfeasibleError(ValueError):
    """The budget sits at or below the alpha-independent consumption floor."""


class PowerBudgetInactiveError(ValueError):
    """Consumption is alpha-independent and never reaches the budget."""


@dataclass(frozen=True)
class PowerModel:
    """Expected-consumption coefficients, all in mW (amp_signal per unit nu1)."""

    amp_signal_term: float
    amp_noise_term: float
    static_term: float


def _check_mode(mode: str):
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")


def power_model(cfg: SystemConfig, mode: str = "nominal") -> PowerModel:
    _check_mode(mode)
    static = cfg.M * (cfg.p1_mw + cfg.p2_mw)
    if cfg.ris_mode is RisMode.PASSIVE:
        return PowerModel(0.0, 0.0, static)
    rho = cfg.rho_effective
    amp_signal = float(np.sum(rho**2 * cfg.zeta_h))
    if mode == "physical":
        amp_signal *= cfg.zeta_p
    amp_noise = cfg.sigma_v2_mw * float(np.sum(rho**2))
    return PowerModel(amp_signal, amp_noise, static)


def expected_power(cfg: SystemConfig, alpha: float, mode: str = "nominal") -> float:
    """Expected RIS consumption at a given time-switching factor, mW."""
    nu1 = harvested_power_coefficient(cfg, alpha)
    model = power_model(cfg, mode)
    return nu1 * model.amp_signal_term + model.amp_noise_term + model.static_term


def instantaneous_power(
    cfg: SystemConfig, draw: ChannelDraw, alpha: float, mode: str = "nominal"
) -> float:
    """Consumption for one channel realization, mW."""
    _check_mode(mode)
    if len(draw.h_mag) != cfg.M:
        raise ValueError(f"draw.h_mag has length {len(draw.h_mag)}, expected M={cfg.M}")
    nu1 = harvested_power_coefficient(cfg, alpha)
    static = cfg.M * (cfg.p1_mw + cfg.p2_mw)
    if cfg.ris_mode is RisMode.PASSIVE:
        return static
    rho = cfg.rho_effective
    scale = draw.h_p_mag**2 if mode == "physical" else 1.0
    amp_signal = nu1 * scale * float(np.sum(rho**2 * draw.h_mag**2))
    amp_noise = cfg.sigma_v2_mw * float(np.sum(rho**2))
    return amp_signal + amp_noise + static


def inverse_power(cfg: SystemConfig, P_R: float, mode: str = "nominal") -> float:
    """The alpha at which expected consumption equals the budget P_R (mW).

    Closed form: nu1 = (P_R - floor) / amp_signal, alpha = nu1/(eta P_p + nu1).
    Raises PowerBudgetInfeasibleError when the budget is not above the
    alpha-independent floor, PowerBudgetInactiveError when consumption never
    reaches the budget for any alpha (no amplified-signal term).
    """
    model = power_model(cfg, mode)
    floor = model.amp_noise_term + model.static_term
    if P_R <= floor:
        raise PowerBudgetInfeasibleError(
            f"budget {P_R} mW is not above the alpha-independent floor {floor} mW"
        )
    if model.amp_signal_term == 0.0:
        raise PowerBudgetInactiveError(
            f"consumption is constant at {floor} mW; the {P_R} mW budget never binds"
        )
    nu1_budget = (P_R - floor) / model.amp_signal_term
    return nu1_budget / (cfg.eta * cfg.p_p_mw + nu1_budget)
