"""Time-switching-factor optimizers for the ergodic and effective rates.

The ergodic rate is strictly unimodal in alpha (its derivative is a
strictly decreasing function of the effective SNR), so the interior
optimum is the unique root of the analytic derivative, found by
bisection. The effective rate is maximized numerically (coarse grid plus
golden-section refinement) and reported alongside its closed-form
candidate 1/(ln 2 * r_v + 1). Power-constrained variants apply the KKT
case split: keep the interior optimum when it is feasible, otherwise
return the budget boundary inverse_power(P_R); a grid re-check warns if
the restricted objective is not maximized at the returned point.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .closedform import effective_rate, ergodic_rate, ergodic_terms
from .config import SystemConfig
from .power import PowerBudgetInactiveError, expected_power, inverse_power

__all__ = [
    "Binding",
    "NoInteriorMaximumError",
    "OptResult",
    "effective_alpha_closed_form",
    "ergodic_rate_derivative",
    "optimize_alpha_ergodic",
    "optimize_alpha_ergodic_constrained",
    "optimize_alpha_effective",
    "optimize_alpha_effective_constrained",
]

_ALPHA_LO = 1e-6
_ALPHA_HI = 1.0 - 1e-6
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Binding(str, Enum):
    INTERIOR = "interior"
    POWER_CONSTRAINED = "power_constrained"


class NoInteriorMaximumError(RuntimeError):
    """The rate derivative has no sign change on (0, 1)."""


@dataclass(frozen=True)
class OptResult:
    """Optimizer outcome.

    residual is |d rate/d alpha| at the optimum for interior derivative
    roots, |expected_power - P_R| for budget-bound solutions, and the final
    search-interval width for golden-section maximizers.
    alpha_closed_form carries the analytic effective-rate candidate where
    one exists (None otherwise).
    """

    alpha_opt: float
    objective_value: float
    binding: Binding
    iterations: int
    residual: float
    alpha_closed_form: float | None = None


def ergodic_rate_derivative(cfg: SystemConfig, alpha: float) -> float:
    """d/d alpha of the closed-form ergodic rate, bits/s/Hz per unit alpha."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    t = ergodic_terms(cfg)
    z = t.t7 * alpha / (t.t6 * (1.0 - alpha))
    slope = (1.0 - alpha) * (
        t.t7 * alpha / (t.t6 * (1.0 - alpha) ** 2) + t.t7 / (t.t6 * (1.0 - alpha))
    )
    return (slope / (z + 1.0) - math.log(z + 1.0)) / math.log(2.0)


def optimize_alpha_ergodic(cfg: SystemConfig, tol: float = 1e-9) -> OptResult:
    """Interior maximizer of the ergodic rate via bisection on the derivative."""
    lo, hi = _ALPHA_LO, _ALPHA_HI
    d_lo, d_hi = ergodic_rate_derivative(cfg, lo), ergodic_rate_derivative(cfg, hi)
    if not (d_lo > 0.0 > d_hi):
        raise NoInteriorMaximumError(
            f"derivative does not change sign on ({lo}, {hi}): "
            f"d({lo})={d_lo:.3e}, d({hi})={d_hi:.3e}"
        )
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ergodic_rate_derivative(cfg, mid) > 0.0:
            lo = mid
        else:
            hi = mid
        iterations += 1
    alpha = 0.5 * (lo + hi)
    return OptResult(
        alpha_opt=alpha,
        objective_value=ergodic_rate(cfg, alpha),
        binding=Binding.INTERIOR,
        iterations=iterations,
        residual=abs(ergodic_rate_derivative(cfg, alpha)),
    )


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, int]:
    """Golden-section maximizer of a unimodal f on [lo, hi]."""
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    iterations = 0
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = f(x1)
        iterations += 1
    return 0.5 * (lo + hi), iterations


def effective_alpha_closed_form(r_v: float) -> float:
    """Analytic effective-rate candidate 1/(ln 2 * r_v + 1); depends on r_v only."""
    if r_v <= 0.0:
        raise ValueError("r_v must be positive")
    return 1.0 / (math.log(2.0) * r_v + 1.0)


def optimize_alpha_effective(cfg: SystemConfig, tol: float = 1e-7) -> OptResult:
    """Numeric maximizer of (1 - P_O(alpha)) r_v, plus the closed-form candidate.

    The two are reported side by side and deliberately not reconciled: the
    closed form comes from a single-term surrogate of the outage integral.
    """
    closed = effective_alpha_closed_form(cfg.r_v)

    def objective(a: float) -> float:
        return effective_rate(cfg, a)

    grid = np.linspace(_ALPHA_LO, _ALPHA_HI, 401)
    values = [objective(a) for a in grid]
    i = int(np.argmax(values))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    alpha, iterations = _golden_max(objective, lo, hi, tol)
    return OptResult(
        alpha_opt=float(alpha),
        objective_value=objective(alpha),
        binding=Binding.INTERIOR,
        iterations=iterations,
        residual=tol,
        alpha_closed_form=closed,
    )


def _recheck_constrained(cfg, objective, result: OptResult, P_R: float, mode: str):
    """Grid sanity check of the KKT case split; warns instead of failing."""
    grid = np.linspace(_ALPHA_LO, _ALPHA_HI, 513)
    feasible = [a for a in grid if expected_power(cfg, a, mode) <= P_R]
    if not feasible:
        return
    best = max(objective(a) for a in feasible)
    if best > result.objective_value + 1e-6 * max(1.0, abs(best)):
        warnings.warn(
            f"constrained optimum {result.objective_value:.6g} at alpha="
            f"{result.alpha_opt:.6g} is beaten by {best:.6g} on the feasibility "
            "grid; the rate may not be unimodal for this configuration",
            RuntimeWarning,
            stacklevel=3,
        )


def _apply_power_constraint(cfg, unconstrained: OptResult, objective, P_R, mode):
    try:
        if expected_power(cfg, unconstrained.alpha_opt, mode) <= P_R:
            return unconstrained
        alpha = inverse_power(cfg, P_R, mode)
    except PowerBudgetInactiveError:
        return unconstrained
    result = OptResult(
        alpha_opt=alpha,
        objective_value=objective(alpha),
        binding=Binding.POWER_CONSTRAINED,
        iterations=unconstrained.iterations,
        residual=abs(expected_power(cfg, alpha, mode) - P_R),
        alpha_closed_form=unconstrained.alpha_closed_form,
    )
    _recheck_constrained(cfg, objective, result, P_R, mode)
    return result


def optimize_alpha_ergodic_constrained(
    cfg: SystemConfig, P_R: float | None = None, mode: str = "nominal"
) -> OptResult:
    """Ergodic-rate maximizer subject to expected_power(alpha) <= P_R."""
    if P_R is None:
        P_R = cfg.P_R_mw
    unconstrained = optimize_alpha_ergodic(cfg)
    return _apply_power_constraint(
        cfg, unconstrained, lambda a: ergodic_rate(cfg, a), P_R, mode
    )


def optimize_alpha_effective_constrained(
    cfg: SystemConfig, P_R: float | None = None, mode: str = "nominal"
) -> OptResult:
    """Effective-rate maximizer subject to expected_power(alpha) <= P_R."""
    if P_R is None:
        P_R = cfg.P_R_mw
    unconstrained = optimize_alpha_effective(cfg)
    return _apply_power_constraint(
        cfg, unconstrained, lambda a: effective_rate(cfg, a), P_R, mode
    )
