"""Independent oracles used by the test suite.

Everything here deliberately avoids the library's own evaluation paths:
outage via scipy adaptive integration, Rayleigh moments via adaptive
quadrature of the density, nearest-phase selection via plain enumeration,
and derivatives via central finite differences.
"""
import math

import numpy as np
from scipy import integrate, stats

from ariswpc import SystemConfig, gamma_fit, harvested_power_coefficient
from ariswpc.closedform import ergodic_terms


def adaptive_outage(cfg: SystemConfig, alpha: float) -> float:
    """Outage integral evaluated by scipy.integrate.quad (reference value)."""
    fit = gamma_fit(cfg)
    t6 = ergodic_terms(cfg).t6
    nu1 = harvested_power_coefficient(cfg, alpha)
    kappa = 2.0 ** (cfg.r_v / (1.0 - alpha)) - 1.0
    c = kappa * t6 / (nu1 * cfg.zeta_p)

    def integrand(t):
        return math.exp(-c / t**2) * stats.gamma.pdf(t, a=fit.s, scale=fit.r)

    split = stats.gamma.ppf(1.0 - 1e-12, a=fit.s, scale=fit.r)
    head, _ = integrate.quad(integrand, 0.0, split, limit=500)
    tail, _ = integrate.quad(integrand, split, np.inf, limit=500)
    return 1.0 - (head + tail)


def rayleigh_moment_quad(zeta: float, n: int) -> float:
    """E{|h|^n} for Rayleigh with E{|h|^2} = zeta, by adaptive quadrature."""
    sigma2 = zeta / 2.0

    def integrand(x):
        return x**n * (x / sigma2) * math.exp(-(x**2) / (2.0 * sigma2))

    value, _ = integrate.quad(integrand, 0.0, np.inf, limit=200)
    return value


def nearest_phase_enumerated(theta_star: float, b: int) -> float:
    """Brute-force nearest quantized phase with ties broken low."""
    levels = 2**b
    best_phase, best_dist = None, None
    for k in range(levels):
        phase = 2.0 * math.pi * k / levels
        delta = (theta_star - phase) % (2.0 * math.pi)
        dist = min(delta, 2.0 * math.pi - delta)
        if best_dist is None or dist < best_dist - 1e-12:
            best_phase, best_dist = phase, dist
    return best_phase


def central_difference(f, x: float, h: float = 1e-6) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)
