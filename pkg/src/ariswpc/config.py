"""System parameterization and unit discipline.

All absolute powers are stored in dBm and converted to linear mW before any
SINR or power-consumption arithmetic. Distances are in meters, rates in
bits/s/Hz, phases in radians. Path loss follows the d^(-epsilon) law.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, fields, replace
from enum import Enum
from functools import cached_property
from typing import Sequence

import numpy as np

__all__ = [
    "ConfigError",
    "ConfigParseError",
    "ConfigValidationError",
    "RisMode",
    "SystemConfig",
    "dbm_to_linear",
    "linear_to_dbm",
    "path_loss",
    "harvested_power_coefficient",
    "load_config",
    "load_config_file",
    "replace_config",
]


class ConfigError(ValueError):
    """Base class for configuration failures."""


class ConfigParseError(ConfigError):
    """Raised when a config document is malformed or has unknown keys."""


class ConfigValidationError(ConfigError):
    """Raised when a field violates an invariant. Carries the field name."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class RisMode(str, Enum):
    ACTIVE = "active"
    PASSIVE = "passive"


def dbm_to_linear(x_dbm: float) -> float:
    """dBm -> mW: 10^(x/10)."""
    return 10.0 ** (x_dbm / 10.0)


def linear_to_dbm(x_mw: float) -> float:
    """mW -> dBm: 10 log10(x)."""
    if x_mw <= 0:
        raise ValueError("linear power must be positive")
    return 10.0 * math.log10(x_mw)


def path_loss(d, epsilon: float):
    """Path-loss coefficient zeta = d^(-epsilon) for distance d > 0 (m)."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    out = d ** (-float(epsilon))
    return float(out) if out.ndim == 0 else out


def harvested_power_coefficient(cfg: "SystemConfig", alpha: float) -> float:
    """Harvested-power coefficient eta*alpha*P_p/(1-alpha), in linear mW.

    Scales the transmit power of the energy-constrained device: it harvests
    for a fraction alpha of the interval and spends the energy over the
    remaining 1-alpha.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    return cfg.eta * alpha * cfg.p_p_mw / (1.0 - alpha)


def _as_tuple(value, M: int, default: float, name: str) -> tuple[float, ...]:
    """Normalize a scalar / sequence / None to a length-M tuple of floats."""
    if value is None:
        return (float(default),) * M
    if isinstance(value, (int, float)):
        return (float(value),) * M
    vals = tuple(float(v) for v in value)
    if len(vals) == 1:
        return vals * M
    if len(vals) != M:
        raise ConfigValidationError(name, f"expected length {M}, got {len(vals)}")
    return vals


@dataclass(frozen=True)
class SystemConfig:
    """Immutable parameter set for one link configuration.

    Scalars rho / d_h / d_g are broadcast to length-M tuples; per-element
    values may be given explicitly. Safe to share across threads.
    """

    P_p_dbm: float = 20.0        # power hub transmit power
    eta: float = 0.8             # rectenna RF->DC efficiency, (0, 1]
    tau_c: float = 1.0           # communication interval, s (normalized)
    alpha: float = 0.1           # time-switching factor, (0, 1)
    M: int = 36                  # number of RIS elements (0 = no RIS)
    rho: float | Sequence[float] | None = None   # per-element amplification
    rho_max: float = 6.0         # amplification ceiling
    b: int = 4                   # phase quantization bits
    d_p: float = 20.0            # hub -> device distance, m
    d_f: float = 30.0            # device -> receiver direct distance, m
    d_h: float | Sequence[float] | None = None   # device -> element m, m
    d_g: float | Sequence[float] | None = None   # element m -> receiver, m
    epsilon: float = 3.0         # path-loss exponent
    sigma_v2_dbm: float = -80.0  # RIS amplifier noise power
    sigma_n2_dbm: float = -80.0  # receiver static noise power
    r_v: float = 2.0             # target rate, bits/s/Hz
    P1_dbm: float = -10.0        # per-element switching-circuit power
    P2_dbm: float = -10.0        # per-element DC-bias power
    P_R_mw: float = 10.0         # RIS power-consumption ceiling, mW
    ris_mode: RisMode = RisMode.ACTIVE
    quadrature_points: int = 100
    mc_samples: int = 10**5

    def __post_init__(self):
        for name in ("M", "b", "quadrature_points", "mc_samples"):
            v = getattr(self, name)
            if not float(v).is_integer():
                raise ConfigValidationError(name, f"must be an integer, got {v}")
            object.__setattr__(self, name, int(v))

        if isinstance(self.ris_mode, str):
            try:
                object.__setattr__(self, "ris_mode", RisMode(self.ris_mode.lower()))
            except ValueError:
                raise ConfigValidationError(
                    "ris_mode", f"must be 'active' or 'passive', got {self.ris_mode!r}"
                ) from None

        if self.M < 0:
            raise ConfigValidationError("M", "must be >= 0")
        object.__setattr__(self, "rho", _as_tuple(self.rho, self.M, self.rho_max, "rho"))
        object.__setattr__(self, "d_h", _as_tuple(self.d_h, self.M, 20.0, "d_h"))
        object.__setattr__(self, "d_g", _as_tuple(self.d_g, self.M, 20.0, "d_g"))

        self._check()

    def _check(self):
        def require(cond: bool, name: str, msg: str):
            if not cond:
                raise ConfigValidationError(name, msg)

        for name in ("P_p_dbm", "sigma_v2_dbm", "sigma_n2_dbm", "P1_dbm", "P2_dbm"):
            require(math.isfinite(getattr(self, name)), name, "must be finite")
        require(0.0 < self.alpha < 1.0, "alpha", f"must lie in (0, 1), got {self.alpha}")
        require(0.0 < self.eta <= 1.0, "eta", f"must lie in (0, 1], got {self.eta}")
        require(self.tau_c > 0, "tau_c", "must be positive")
        require(self.epsilon > 0, "epsilon", "must be positive")
        require(self.b >= 1, "b", "must be >= 1")
        require(self.rho_max >= 0, "rho_max", "must be >= 0")
        require(self.d_p > 0, "d_p", "must be positive")
        require(self.d_f > 0, "d_f", "must be positive")
        require(all(d > 0 for d in self.d_h), "d_h", "all distances must be positive")
        require(all(d > 0 for d in self.d_g), "d_g", "all distances must be positive")
        require(
            all(0.0 <= r <= self.rho_max for r in self.rho),
            "rho",
            f"each element must lie in [0, rho_max={self.rho_max}]",
        )
        require(self.r_v >= 0, "r_v", "must be >= 0")
        require(self.P_R_mw > 0, "P_R_mw", "must be positive")
        require(self.quadrature_points >= 1, "quadrature_points", "must be >= 1")
        require(self.mc_samples >= 1, "mc_samples", "must be >= 1")

    # ---- unit conversions and derived coefficients -------------------------

    @property
    def p_p_mw(self) -> float:
        return dbm_to_linear(self.P_p_dbm)

    @property
    def sigma_n2_mw(self) -> float:
        return dbm_to_linear(self.sigma_n2_dbm)

    @property
    def sigma_v2_mw(self) -> float:
        """Amplifier noise in mW; identically 0 in passive mode."""
        if self.ris_mode is RisMode.PASSIVE:
            return 0.0
        return dbm_to_linear(self.sigma_v2_dbm)

    @property
    def p1_mw(self) -> float:
        return dbm_to_linear(self.P1_dbm)

    @property
    def p2_mw(self) -> float:
        return dbm_to_linear(self.P2_dbm)

    @cached_property
    def rho_effective(self) -> np.ndarray:
        """Per-element amplification actually applied (all ones in passive mode)."""
        if self.ris_mode is RisMode.PASSIVE:
            arr = np.ones(self.M)
        else:
            arr = np.asarray(self.rho, dtype=float)
        arr.setflags(write=False)
        return arr

    @property
    def zeta_p(self) -> float:
        return path_loss(self.d_p, self.epsilon)

    @property
    def zeta_f(self) -> float:
        return path_loss(self.d_f, self.epsilon)

    @cached_property
    def zeta_h(self) -> np.ndarray:
        arr = np.atleast_1d(path_loss(np.asarray(self.d_h), self.epsilon))
        arr.setflags(write=False)
        return arr

    @cached_property
    def zeta_g(self) -> np.ndarray:
        arr = np.atleast_1d(path_loss(np.asarray(self.d_g), self.epsilon))
        arr.setflags(write=False)
        return arr


# ---- config document parsing ------------------------------------------------

_INT_KEYS = {"M", "b", "quadrature_points", "mc_samples"}
_LIST_KEYS = {"rho", "d_h", "d_g"}
_STR_KEYS = {"ris_mode"}
_KNOWN_KEYS = {f.name for f in fields(SystemConfig)}


def _coerce(key: str, raw: str):
    raw = raw.strip()
    try:
        if key in _STR_KEYS:
            return raw
        if key in _INT_KEYS:
            return int(raw)
        if key in _LIST_KEYS and "," in raw:
            return tuple(float(v) for v in raw.split(","))
        return float(raw)
    except ValueError:
        raise ConfigParseError(f"cannot parse value for {key!r}: {raw!r}") from None


def load_config(text: str) -> SystemConfig:
    """Parse a flat ``key = value`` document into a validated SystemConfig.

    Syntax: one assignment per line, ``#`` comments, an optional ``[config]``
    section header, and comma-separated lists for rho / d_h / d_g. Keys are
    the SystemConfig field names; unknown keys are rejected; absent keys take
    the defaults. An empty document yields the default configuration.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.optionxform = str
    if not text.lstrip().startswith("["):
        text = "[config]\n" + text
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigParseError(f"malformed config document: {exc}") from exc

    data: dict = {}
    for section in parser.sections():
        for key, raw in parser.items(section):
            if key not in _KNOWN_KEYS:
                raise ConfigParseError(f"unknown config key: {key!r}")
            data[key] = _coerce(key, raw)
    return SystemConfig(**data)


def load_config_file(path) -> SystemConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return load_config(fh.read())


def replace_config(cfg: SystemConfig, **changes) -> SystemConfig:
    """Functional update that revalidates and rebroadcasts per-element fields.

    When M changes, uniform rho / d_h / d_g are rebroadcast to the new length;
    non-uniform vectors cannot be resized implicitly.
    """
    if "M" in changes and changes["M"] != cfg.M:
        for name in ("rho", "d_h", "d_g"):
            if name in changes:
                continue
            current = getattr(cfg, name)
            uniq = set(current)
            if len(uniq) > 1:
                raise ConfigValidationError(
                    name, "cannot change M with a non-uniform per-element vector"
                )
            changes[name] = uniq.pop() if uniq else None
    return replace(cfg, **changes)
