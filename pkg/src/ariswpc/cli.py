"""Command-line surface: parameter sweeps, figure-data CSVs, optimizer runs.

Subcommands: sweep, figure, optimize, compare, mc. All output is CSV with
unit-carrying headers and fixed scientific formatting (9 significant
digits), so identical seeds and flags reproduce byte-identical files.
Precedence of settings: built-in defaults < --config file < --set KEY=VALUE
< dedicated flags (--samples, --quadrature-points).
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Sequence

import numpy as np

from .closedform import effective_rate, ergodic_rate, outage_probability
from .config import RisMode, SystemConfig, load_config_file, replace_config
from .montecarlo import mc_ergodic_rate, mc_outage
from .optimize import (
    effective_alpha_closed_form,
    optimize_alpha_effective,
    optimize_alpha_effective_constrained,
    optimize_alpha_ergodic,
    optimize_alpha_ergodic_constrained,
)
from .power import expected_power

__all__ = ["SweepSpec", "run_sweep", "reproduce_figure", "compare_active_passive", "main"]

SWEEP_VARIABLES = ("P_p_dbm", "M", "alpha", "b", "rho", "P_R_mw")
SWEEP_OUTPUTS = (
    "ergodic_cf",
    "ergodic_mc",
    "outage_cf",
    "outage_mc",
    "effective",
    "power",
    "alpha_star",
    "alpha_dagger",
)
FIGURES = ("fig2", "fig3", "fig4", "fig5", "fig6")

_CONFIG_KEYS = {f.name for f in fields(SystemConfig)}

_PP_GRID = tuple(range(0, 31, 2))       # dBm
_RHO_GRID = tuple(np.arange(1.0, 6.01, 0.5))
_M_GRID = tuple(range(4, 65, 4))


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.8e}"


def _csv_table(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


@dataclass(frozen=True)
class SweepSpec:
    """One-variable sweep request: which knob, which values, which outputs."""

    variable: str
    values: tuple[float, ...]
    outputs: tuple[str, ...]
    seed: int = 0

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"variable must be one of {SWEEP_VARIABLES}, got {self.variable!r}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if not self.values:
            raise ValueError("values must be non-empty")
        diffs = np.diff(self.values)
        if len(self.values) > 1 and not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ValueError("values must be strictly monotone")
        if not self.outputs:
            raise ValueError("outputs must be non-empty")
        unknown = set(self.outputs) - set(SWEEP_OUTPUTS)
        if unknown:
            raise ValueError(f"unknown outputs: {sorted(unknown)}; allowed: {SWEEP_OUTPUTS}")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


_SWEEP_COLUMNS = {
    "ergodic_cf": ("ergodic_cf_bits_per_s_hz",),
    "ergodic_mc": ("ergodic_mc_bits_per_s_hz", "ergodic_mc_stderr_bits_per_s_hz"),
    "outage_cf": ("outage_cf_prob",),
    "outage_mc": ("outage_mc_prob", "outage_mc_stderr_prob"),
    "effective": ("effective_rate_bits_per_s_hz",),
    "power": ("expected_power_mw",),
    "alpha_star": ("alpha_star",),
    "alpha_dagger": ("alpha_dagger",),
}

_SWEEP_HEADER_FIRST = {
    "P_p_dbm": "P_p_dbm",
    "M": "M_elements",
    "alpha": "alpha",
    "b": "b_bits",
    "rho": "rho_gain",
    "P_R_mw": "P_R_mw",
}


def _point_config(cfg: SystemConfig, variable: str, value: float) -> SystemConfig:
    if variable in ("M", "b"):
        if not float(value).is_integer():
            raise ValueError(f"{variable} must be an integer, got {value}")
        return replace_config(cfg, **{variable: int(value)})
    return replace_config(cfg, **{variable: value})


def _point_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence((seed, index)).generate_state(1)[0])


def run_sweep(cfg: SystemConfig, spec: SweepSpec) -> str:
    """Evaluate the requested outputs at each sweep value; returns CSV text.

    Sweep points are independent (safe to parallelize); rows are emitted in
    sweep order. Monte Carlo outputs get a per-point seed derived from
    (spec.seed, point index).
    """
    header = [_SWEEP_HEADER_FIRST[spec.variable]]
    for output in spec.outputs:
        header.extend(_SWEEP_COLUMNS[output])

    rows = []
    for index, value in enumerate(spec.values):
        try:
            point = _point_config(cfg, spec.variable, value)
            alpha = point.alpha
            seed = _point_seed(spec.seed, index)
            row = [int(value) if spec.variable in ("M", "b") else value]
            for output in spec.outputs:
                if output == "ergodic_cf":
                    row.append(ergodic_rate(point, alpha))
                elif output == "ergodic_mc":
                    est = mc_ergodic_rate(point, alpha, seed=seed)
                    row.extend([est.value, est.stderr])
                elif output == "outage_cf":
                    row.append(outage_probability(point, alpha))
                elif output == "outage_mc":
                    est = mc_outage(point, alpha, seed=seed)
                    row.extend([est.value, est.stderr])
                elif output == "effective":
                    row.append(effective_rate(point, alpha))
                elif output == "power":
                    row.append(expected_power(point, alpha))
                elif output == "alpha_star":
                    row.append(optimize_alpha_ergodic(point).alpha_opt)
                elif output == "alpha_dagger":
                    row.append(effective_alpha_closed_form(point.r_v))
            rows.append(row)
        except ValueError as exc:
            raise ValueError(f"sweep {spec.variable}={value:g}: {exc}") from exc
    return _csv_table(header, rows)


# ---- figure data ------------------------------------------------------------


def _fig2(cfg: SystemConfig) -> dict[str, str]:
    alpha = cfg.alpha
    variants = {
        "ergodic_active_b1_bits_per_s_hz": replace_config(cfg, b=1, ris_mode=RisMode.ACTIVE),
        "ergodic_active_b4_bits_per_s_hz": replace_config(cfg, b=4, ris_mode=RisMode.ACTIVE),
        "ergodic_active_ideal_bits_per_s_hz": replace_config(cfg, b=16, ris_mode=RisMode.ACTIVE),
        "ergodic_passive_bits_per_s_hz": replace_config(cfg, ris_mode=RisMode.PASSIVE),
    }
    rows = []
    for pp in _PP_GRID:
        row = [float(pp)]
        for variant in variants.values():
            row.append(ergodic_rate(replace_config(variant, P_p_dbm=float(pp)), alpha))
        rows.append(row)
    return {"fig2_ergodic_vs_pp.csv": _csv_table(["P_p_dbm", *variants], rows)}


def _fig3(cfg: SystemConfig) -> dict[str, str]:
    alpha = cfg.alpha
    variants = {}
    for m in (16, 32):
        variants[f"outage_active_m{m}_prob"] = replace_config(cfg, M=m, ris_mode=RisMode.ACTIVE)
        variants[f"outage_passive_m{m}_prob"] = replace_config(cfg, M=m, ris_mode=RisMode.PASSIVE)
    rows = []
    for pp in _PP_GRID:
        row = [float(pp)]
        for variant in variants.values():
            row.append(outage_probability(replace_config(variant, P_p_dbm=float(pp)), alpha))
        rows.append(row)
    return {"fig3_outage_vs_pp.csv": _csv_table(["P_p_dbm", *variants], rows)}


def _fig4(cfg: SystemConfig) -> dict[str, str]:
    alpha_star = optimize_alpha_ergodic(cfg).alpha_opt
    alpha_dagger = effective_alpha_closed_form(cfg.r_v)
    grid = sorted(set(np.linspace(0.01, 0.99, 99)) | {alpha_star, alpha_dagger})
    rows = []
    for a in grid:
        rows.append(
            [
                a,
                ergodic_rate(cfg, a),
                effective_rate(cfg, a),
                a == alpha_star,
                a == alpha_dagger,
            ]
        )
    header = [
        "alpha",
        "ergodic_rate_bits_per_s_hz",
        "effective_rate_bits_per_s_hz",
        "is_alpha_star",
        "is_alpha_dagger",
    ]
    return {"fig4_rates_vs_alpha.csv": _csv_table(header, rows)}


def _fig5(cfg: SystemConfig) -> dict[str, str]:
    alpha = cfg.alpha
    rho_rows = [
        [rho, expected_power(replace_config(cfg, rho=rho, rho_max=max(cfg.rho_max, rho)), alpha)]
        for rho in _RHO_GRID
    ]
    pp_rows = [
        [float(pp), expected_power(replace_config(cfg, P_p_dbm=float(pp)), alpha)]
        for pp in _PP_GRID
    ]
    return {
        "fig5_power_vs_rho.csv": _csv_table(["rho_gain", "expected_power_mw"], rho_rows),
        "fig5_power_vs_pp.csv": _csv_table(["P_p_dbm", "expected_power_mw"], pp_rows),
    }


def _fig6(cfg: SystemConfig) -> dict[str, str]:
    m_rows = [
        [
            m,
            expected_power(replace_config(cfg, M=m), 0.1),
            expected_power(replace_config(cfg, M=m), 0.9),
        ]
        for m in _M_GRID
    ]
    alpha_rows = [
        [a, expected_power(cfg, a)] for a in np.linspace(0.1, 0.9, 17)
    ]
    return {
        "fig6_power_vs_m.csv": _csv_table(
            ["M_elements", "expected_power_alpha_0p1_mw", "expected_power_alpha_0p9_mw"], m_rows
        ),
        "fig6_power_vs_alpha.csv": _csv_table(["alpha", "expected_power_mw"], alpha_rows),
    }


def reproduce_figure(fig: str, cfg: SystemConfig | None = None) -> dict[str, str]:
    """CSV data series behind one of the summary figures (fig2..fig6)."""
    if cfg is None:
        cfg = SystemConfig()
    builders = {"fig2": _fig2, "fig3": _fig3, "fig4": _fig4, "fig5": _fig5, "fig6": _fig6}
    if fig not in builders:
        raise ValueError(f"unknown figure {fig!r}; expected one of {FIGURES}")
    return builders[fig](cfg)


def compare_active_passive(cfg: SystemConfig) -> str:
    """Side-by-side closed-form summary at identical M and alpha."""
    rows = []
    for mode in (RisMode.ACTIVE, RisMode.PASSIVE):
        variant = replace_config(cfg, ris_mode=mode)
        rows.append(
            [
                mode.value,
                ergodic_rate(variant, cfg.alpha),
                outage_probability(variant, cfg.alpha),
                effective_rate(variant, cfg.alpha),
                expected_power(variant, cfg.alpha),
            ]
        )
    header = [
        "ris_mode",
        "ergodic_rate_bits_per_s_hz",
        "outage_prob",
        "effective_rate_bits_per_s_hz",
        "expected_power_mw",
    ]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([row[0], *[_fmt(v) for v in row[1:]]])
    return buf.getvalue()


# ---- argument handling -------------------------------------------------------


def _build_config(args) -> SystemConfig:
    cfg = load_config_file(args.config) if args.config else SystemConfig()
    overrides = {}
    for item in args.set or []:
        if "=" not in item:
            raise ValueError(f"--set expects KEY=VALUE, got {item!r}")
        key, raw = item.split("=", 1)
        key = key.strip()
        raw = raw.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"unknown config key: {key!r}")
        if key == "ris_mode":
            overrides[key] = raw
        elif key in ("M", "b", "quadrature_points", "mc_samples"):
            overrides[key] = int(raw)
        elif "," in raw:
            overrides[key] = tuple(float(v) for v in raw.split(","))
        else:
            overrides[key] = float(raw)
    if args.samples is not None:
        overrides["mc_samples"] = args.samples
    if args.quadrature_points is not None:
        overrides["quadrature_points"] = args.quadrature_points
    return replace_config(cfg, **overrides) if overrides else cfg


def _emit(files: dict[str, str], out_dir: str | None) -> None:
    if out_dir is None:
        for i, (name, text) in enumerate(files.items()):
            if len(files) > 1:
                if i:
                    sys.stdout.write("\n")
                sys.stdout.write(f"# file: {name}\n")
            sys.stdout.write(text)
    else:
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for name, text in files.items():
            (directory / name).write_text(text, encoding="utf-8")
            print(f"wrote {directory / name}", file=sys.stderr)


def _fmt_opt_rows(cfg, args):
    budget = args.power_budget if args.power_budget is not None else cfg.P_R_mw
    runs = [
        ("ergodic", optimize_alpha_ergodic(cfg)),
        ("ergodic_constrained", optimize_alpha_ergodic_constrained(cfg, budget)),
        ("effective", optimize_alpha_effective(cfg)),
        ("effective_constrained", optimize_alpha_effective_constrained(cfg, budget)),
    ]
    header = [
        "objective",
        "alpha_opt",
        "objective_value_bits_per_s_hz",
        "binding",
        "iterations",
        "residual",
        "alpha_closed_form",
        "expected_power_mw",
    ]
    rows = []
    for name, res in runs:
        rows.append(
            [
                name,
                _fmt(res.alpha_opt),
                _fmt(res.objective_value),
                res.binding.value,
                str(res.iterations),
                _fmt(res.residual),
                _fmt(res.alpha_closed_form) if res.alpha_closed_form is not None else "",
                _fmt(expected_power(cfg, res.alpha_opt)),
            ]
        )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _cmd_sweep(args) -> int:
    cfg = _build_config(args)
    spec = SweepSpec(
        variable=args.variable,
        values=tuple(float(v) for v in args.values.split(",")),
        outputs=tuple(args.outputs.split(",")),
        seed=args.seed,
    )
    _emit({"sweep.csv": run_sweep(cfg, spec)}, args.out_dir)
    return 0


def _cmd_figure(args) -> int:
    cfg = _build_config(args)
    figs = FIGURES if args.figure == "all" else (args.figure,)
    files: dict[str, str] = {}
    for fig in figs:
        files.update(reproduce_figure(fig, cfg))
    _emit(files, args.out_dir)
    return 0


def _cmd_optimize(args) -> int:
    cfg = _build_config(args)
    _emit({"optimize.csv": _fmt_opt_rows(cfg, args)}, args.out_dir)
    return 0


def _cmd_compare(args) -> int:
    cfg = _build_config(args)
    _emit({"compare.csv": compare_active_passive(cfg)}, args.out_dir)
    return 0


def _cmd_mc(args) -> int:
    cfg = _build_config(args)
    alpha = args.alpha if args.alpha is not None else cfg.alpha
    rate = mc_ergodic_rate(cfg, alpha, seed=args.seed)
    out = mc_outage(cfg, alpha, seed=args.seed)
    header = [
        "alpha",
        "ergodic_cf_bits_per_s_hz",
        "ergodic_mc_bits_per_s_hz",
        "ergodic_mc_stderr_bits_per_s_hz",
        "outage_cf_prob",
        "outage_mc_prob",
        "outage_mc_stderr_prob",
        "n_samples",
        "seed",
    ]
    row = [
        alpha,
        ergodic_rate(cfg, alpha),
        rate.value,
        rate.stderr,
        outage_probability(cfg, alpha),
        out.value,
        out.stderr,
        rate.n,
        args.seed,
    ]
    _emit({"mc.csv": _csv_table(header, [row])}, args.out_dir)
    return 0


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ariswpc",
        description="Active-RIS wireless-powered link analysis: closed forms, "
        "Monte Carlo cross-validation, and time-switching optimization.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value config file")
    common.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override a config field (repeatable; lists comma-separated)",
    )
    common.add_argument("--seed", type=int, default=0, help="root RNG seed (default 0)")
    common.add_argument("--samples", type=int, help="override mc_samples")
    common.add_argument("--quadrature-points", type=int, help="override quadrature_points")
    common.add_argument("--out-dir", help="write CSVs here instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", parents=[common], help="sweep one variable, CSV out")
    p.add_argument("--variable", required=True, choices=SWEEP_VARIABLES)
    p.add_argument("--values", required=True, help="comma-separated, strictly monotone")
    p.add_argument(
        "--outputs",
        required=True,
        help=f"comma-separated subset of {','.join(SWEEP_OUTPUTS)}",
    )
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser(
        "figure",
        parents=[common],
        help="emit figure data series (fig2: rate vs P_p; fig3: outage vs P_p; "
        "fig4: rates vs alpha; fig5: power vs rho in [1,6] and vs P_p in "
        "[0,30] dBm; fig6: power vs M in [4,64] and vs alpha)",
    )
    p.add_argument("figure", choices=(*FIGURES, "all"))
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("optimize", parents=[common], help="run all four alpha optimizers")
    p.add_argument("--power-budget", type=float, help="budget in mW (default: config P_R_mw)")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("compare", parents=[common], help="active vs passive summary")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("mc", parents=[common], help="Monte Carlo vs closed form at one alpha")
    p.add_argument("--alpha", type=float, help="time-switching factor (default: config alpha)")
    p.set_defaults(func=_cmd_mc)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # single-line machine-parsable failure
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
