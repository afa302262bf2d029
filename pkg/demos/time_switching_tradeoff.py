"""Explore the harvest-vs-transmit tradeoff in the time-switching factor.

More harvesting time means more transmit power but a shorter data phase.
This script traces both rate objectives over alpha, then runs the four
optimizers (ergodic / effective, unconstrained / power-budget-bound).
"""
import numpy as np

from ariswpc import (
    SystemConfig,
    effective_rate,
    ergodic_rate,
    ergodic_rate_derivative,
    expected_power,
    optimize_alpha_effective,
    optimize_alpha_effective_constrained,
    optimize_alpha_ergodic,
    optimize_alpha_ergodic_constrained,
)


def main():
    cfg = SystemConfig()
    print(f"target rate r_v = {cfg.r_v} bits/s/Hz, budget P_R = {cfg.P_R_mw} mW\n")

    print(f"{'alpha':>6} {'ergodic':>9} {'effective':>10} {'d(ergodic)/da':>14} {'power mW':>9}")
    for alpha in np.arange(0.05, 0.96, 0.05):
        print(
            f"{alpha:6.2f} {ergodic_rate(cfg, alpha):9.4f} "
            f"{effective_rate(cfg, alpha):10.4f} "
            f"{ergodic_rate_derivative(cfg, alpha):+14.4f} "
            f"{expected_power(cfg, alpha):9.3f}"
        )

    star = optimize_alpha_ergodic(cfg)
    star_c = optimize_alpha_ergodic_constrained(cfg)
    eff = optimize_alpha_effective(cfg)
    eff_c = optimize_alpha_effective_constrained(cfg)

    print("\nOptimizers:")
    print(f"  ergodic, unconstrained:    alpha* = {star.alpha_opt:.6f} "
          f"-> {star.objective_value:.4f} bits/s/Hz (derivative residual {star.residual:.1e})")
    print(f"  ergodic, {cfg.P_R_mw:g} mW budget:   alpha  = {star_c.alpha_opt:.6f} "
          f"-> {star_c.objective_value:.4f} bits/s/Hz [{star_c.binding.value}]")
    print(f"  effective, unconstrained:  alpha  = {eff.alpha_opt:.6f} "
          f"-> {eff.objective_value:.4f} bits/s/Hz "
          f"(closed-form candidate {eff.alpha_closed_form:.6f})")
    print(f"  effective, {cfg.P_R_mw:g} mW budget: alpha  = {eff_c.alpha_opt:.6f} "
          f"-> {eff_c.objective_value:.4f} bits/s/Hz [{eff_c.binding.value}]")

    print(
        "\nThe closed-form effective-rate candidate 1/(ln2 * r_v + 1) depends only"
        "\non the target rate; the numeric maximizer of the full quadrature-based"
        "\neffective rate lands nearby but not identically, so both are reported."
    )


if __name__ == "__main__":
    main()
