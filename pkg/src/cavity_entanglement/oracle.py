"""
Microscopic check of the Markovian cavity amplitude.

One cavity photon couples with equal strength g to N reservoir modes whose
detunings are evenly spread over a band of width W. In the single-excitation
sector the state is xi |1>_c |vac> + sum_k lambda_k |0>_c |1_k>, and in the
frame rotating at the cavity frequency

    d xi / dt       = -i g sum_k lambda_k
    d lambda_k / dt = -i (Delta_k lambda_k + g xi)

which is integrated with fixed-step fourth-order Runge-Kutta. With
g = sqrt(kappa W / (2 pi N)) the cavity amplitude approaches exp(-kappa t / 2)
as N and W grow, until the discretized band revives at t = 2 pi N / W.
"""

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConfigError

logger = logging.getLogger(__name__)

MIN_MODES = 50


@dataclass
class OracleConfig:
    n_modes: int = 400
    bandwidth: float = 40.0
    kappa: float = 1.0
    t_max: float = 3.0
    dt: float = 1e-3

    @property
    def revival_time(self) -> float:
        return 2.0 * math.pi * self.n_modes / self.bandwidth

    @property
    def coupling(self) -> float:
        return math.sqrt(self.kappa * self.bandwidth / (2.0 * math.pi * self.n_modes))

    def validate(self) -> "OracleConfig":
        """Raise ConfigError unless the run is well posed; returns self."""
        if int(self.n_modes) != self.n_modes or self.n_modes < MIN_MODES:
            raise ConfigError(f"n_modes must be an integer >= {MIN_MODES}, got {self.n_modes!r}")
        for name in ("bandwidth", "kappa", "t_max", "dt"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ConfigError(f"{name} must be a positive number, got {value!r}")
        if self.dt > 1e-3 / self.kappa * (1 + 1e-12):
            raise ConfigError(f"dt={self.dt:g} exceeds 1e-3/kappa")
        if self.t_max >= self.revival_time:
            raise ConfigError(
                f"t_max={self.t_max:g} reaches the band revival time 2*pi*N/W="
                f"{self.revival_time:.6g}; raise n_modes or lower bandwidth")
        return self

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class OracleSeries:
    """Cavity amplitude modulus and leaked population on the integration grid."""
    times: np.ndarray
    xi_n: np.ndarray
    leaked: np.ndarray

    def norm_error(self) -> float:
        return float(np.max(np.abs(self.xi_n ** 2 + self.leaked - 1.0)))


def _derivative(y: np.ndarray, detunings: np.ndarray, g: float) -> np.ndarray:
    out = np.empty_like(y)
    out[0] = -1j * g * np.sum(y[1:])
    out[1:] = -1j * (detunings * y[1:] + g * y[0])
    return out


def simulate_single_excitation(config: OracleConfig) -> OracleSeries:
    """Integrate the single-excitation dynamics from |1>_c |vac>_r."""
    config.validate()
    n = int(config.n_modes)
    detunings = np.linspace(-0.5 * config.bandwidth, 0.5 * config.bandwidth, n)
    g = config.coupling
    steps = int(round(config.t_max / config.dt))
    h = config.t_max / steps

    y = np.zeros(n + 1, dtype=np.complex128)
    y[0] = 1.0
    xi_n = np.empty(steps + 1)
    leaked = np.empty(steps + 1)
    xi_n[0], leaked[0] = 1.0, 0.0

    for i in range(1, steps + 1):
        k1 = _derivative(y, detunings, g)
        k2 = _derivative(y + 0.5 * h * k1, detunings, g)
        k3 = _derivative(y + 0.5 * h * k2, detunings, g)
        k4 = _derivative(y + h * k3, detunings, g)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        xi_n[i] = abs(y[0])
        leaked[i] = float(np.sum(np.abs(y[1:]) ** 2))

    series = OracleSeries(times=np.arange(steps + 1) * h, xi_n=xi_n, leaked=leaked)
    logger.debug("oracle N=%d W=%g integrated %d steps, norm error %.3e",
                 n, config.bandwidth, steps, series.norm_error())
    return series


def compare_to_markov(series: OracleSeries, kappa: float = 1.0) -> float:
    """max_t |xi_N(t) - exp(-kappa t / 2)|."""
    return float(np.max(np.abs(series.xi_n - np.exp(-0.5 * kappa * series.times))))


def leak_deviation(series: OracleSeries, kappa: float = 1.0) -> float:
    """max_t |leaked(t) - (1 - exp(-kappa t))|."""
    return float(np.max(np.abs(series.leaked + np.expm1(-kappa * series.times))))


def fit_decay_rate(series: OracleSeries, t_lo: float = 0.5, t_hi: float = 2.5) -> float:
    """Least-squares decay rate of xi_N^2 over [t_lo, t_hi]."""
    mask = (series.times >= t_lo) & (series.times <= t_hi)
    if np.count_nonzero(mask) < 2:
        raise ConfigError(f"fit window [{t_lo}, {t_hi}] holds fewer than two samples")
    slope, _ = np.polyfit(series.times[mask], np.log(series.xi_n[mask] ** 2), 1)
    return float(-slope)
