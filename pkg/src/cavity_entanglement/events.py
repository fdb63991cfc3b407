"""
Sudden death and sudden birth of pair entanglement.

A series is "alive" where the measure exceeds its separability threshold by
more than ``value_tol`` (0 for concurrence, 1 for the LBOE) and "dead"
otherwise. Each alive/dead transition on the scan grid is refined by
bisection on the underlying measure.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, NotNormalized
from .measures import pair_measure
from .state import PartitionSpec, build_state, check_alphas

logger = logging.getLogger(__name__)

DEATH = "death"
BIRTH = "birth"
TANGENCY = "tangency"

ESD = "ESD"
ESB = "ESB"

CAVITIES = PartitionSpec.of("c1", "c2")
RESERVOIRS = PartitionSpec.of("r1", "r2")

TIME_TOL = 1e-8
VALUE_TOL = 1e-9

# Largest Fock cutoff whose event times have a closed form.
CLOSED_FORM_CUTOFF = 2


@dataclass(frozen=True)
class EventTimes:
    """Analytic death time of the cavity pair and birth time of the reservoir pair."""
    t_esd: float
    t_esb: float

    @property
    def window(self) -> Optional[Tuple[float, float]]:
        """Interval where neither pair is entangled, if any."""
        if self.t_esd < self.t_esb:
            return self.t_esd, self.t_esb
        return None

    def simultaneous(self, tol: float = 1e-9) -> bool:
        return abs(self.t_esd - self.t_esb) <= tol


@dataclass(frozen=True)
class Crossing:
    time: float
    direction: str


@dataclass(frozen=True)
class EventReport:
    kind: str
    partition: PartitionSpec
    t_numeric: float
    t_analytic: Optional[float]
    measure_kind: str

    @property
    def difference(self) -> Optional[float]:
        if self.t_analytic is None:
            return None
        return self.t_numeric - self.t_analytic


def _check_rate(kappa: float):
    if not math.isfinite(kappa) or kappa <= 0:
        raise DomainError(f"decay rate kappa must be > 0, got {kappa!r}")


def analytic_times_qubit(alpha: float, beta: float, kappa: float = 1.0) -> Optional[EventTimes]:
    """t_ESD = -ln(1 - alpha/beta)/kappa and t_ESB = ln(beta/alpha)/kappa.

    Returns None when beta <= alpha: the cavity pair then only decays
    asymptotically.
    """
    norm = math.hypot(alpha, beta)
    if abs(norm - 1.0) > 1e-9:
        raise NotNormalized(norm, 1e-9)
    _check_rate(kappa)
    if alpha <= 0 or beta <= 0:
        raise DomainError(f"amplitudes must be positive, got alpha={alpha!r}, beta={beta!r}")
    if beta <= alpha:
        return None
    ratio = alpha / beta
    return EventTimes(t_esd=-math.log1p(-ratio) / kappa, t_esb=math.log(beta / alpha) / kappa)


def analytic_times_qutrit(alpha: float, gamma: float, kappa: float = 1.0) -> EventTimes:
    """Qutrit times for sum alpha_0|00> + alpha_1|11> + alpha_2|22> with alpha = alpha_0, gamma = alpha_2."""
    _check_rate(kappa)
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    if gamma <= alpha:
        raise DomainError(f"qutrit sudden death needs gamma > alpha, got gamma={gamma!r}")
    return EventTimes(t_esd=-math.log1p(-math.sqrt(alpha / gamma)) / kappa,
                      t_esb=math.log(gamma / alpha) / (2.0 * kappa))


def analytic_times(alphas: Sequence[float], kappa: float = 1.0) -> Optional[EventTimes]:
    """Closed-form event times for Fock cutoffs d = 1 and d = 2.

    Both come from the {|0,d>, |d,0>} block of the partially transposed pair,
    which decides the sign of the spectrum only for d <= 2. Returns None when
    alpha_d <= alpha_0 (no sudden death) and for d > CLOSED_FORM_CUTOFF, where
    the times are only known numerically.
    """
    vec = check_alphas(alphas)
    _check_rate(kappa)
    d = vec.size - 1
    if not has_closed_form(vec):
        logger.debug("no closed-form event times for cutoff d=%d", d)
        return None
    a0, ad = abs(vec[0]), abs(vec[-1])
    if a0 == 0.0 or ad <= a0:
        return None
    ratio = a0 / ad
    return EventTimes(t_esd=-math.log1p(-ratio ** (1.0 / d)) / kappa,
                      t_esb=math.log(ad / a0) / (d * kappa))


def has_closed_form(alphas: Sequence[float]) -> bool:
    return len(alphas) - 1 <= CLOSED_FORM_CUTOFF


def simultaneity_condition(alphas: Sequence[float], tol: float = 1e-9) -> bool:
    """True when alpha_d/alpha_0 = 2^d and alpha_d dominates every other amplitude.

    d is the Fock cutoff, so D = d + 1 levels per party give 2^(D-1). The
    death and birth times coincide exactly at ln 2 / kappa for d <= 2; for
    larger d they only straddle ln 2 (about 0.701 and 0.685 at d = 3).
    """
    vec = np.abs(check_alphas(alphas))
    d = vec.size - 1
    if vec[0] == 0.0:
        return False
    if not math.isclose(vec[-1] / vec[0], 2.0 ** d, rel_tol=tol):
        return False
    return bool(np.all(vec[:-1] < vec[-1]))


def c1r1_peak(beta: float, kappa: float = 1.0) -> Tuple[float, float]:
    """Time and value of the cavity-own-reservoir concurrence maximum."""
    _check_rate(kappa)
    return math.log(2.0) / kappa, beta ** 2


def _bisect_boundary(alive: Callable[[float], bool], lo: float, hi: float,
                     time_tol: float) -> float:
    lo_state = alive(lo)
    steps = 0
    while hi - lo > time_tol:
        mid = 0.5 * lo + 0.5 * hi
        if alive(mid) == lo_state:
            lo = mid
        else:
            hi = mid
        steps += 1
    logger.debug("bisection converged after %d steps", steps)
    return 0.5 * (lo + hi)


def _interpolate(t0: float, v0: float, t1: float, v1: float, threshold: float) -> float:
    e0, e1 = v0 - threshold, v1 - threshold
    if e0 == e1:
        return t0
    frac = min(1.0, max(0.0, e0 / (e0 - e1)))
    return t0 + frac * (t1 - t0)


def detect_crossings(times: Sequence[float], values: Sequence[float], threshold: float,
                     measure: Optional[Callable[[float], float]] = None,
                     value_tol: float = VALUE_TOL,
                     time_tol: float = TIME_TOL) -> List[Crossing]:
    """Locate every alive/dead transition of a sampled series.

    With ``measure`` each transition is bisected to ``time_tol``; without it the
    boundary is linearly interpolated. A dead stretch of a single sample whose
    refined edges lie within one grid step is a touch of the threshold and is
    reported once as a tangency.
    """
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.ndim != 1 or t.size < 2 or t.shape != v.shape:
        raise ValueError("need at least two samples with matching times and values")
    if not np.all(np.isfinite(v)):
        raise ValueError("series contains NaN or Inf values")

    def alive(x: float) -> bool:
        return measure(x) > threshold + value_tol

    states = v > threshold + value_tol
    crossings: List[Crossing] = []
    for i in range(t.size - 1):
        if states[i] == states[i + 1]:
            continue
        if measure is not None:
            when = _bisect_boundary(alive, float(t[i]), float(t[i + 1]), time_tol)
        else:
            when = _interpolate(float(t[i]), float(v[i]), float(t[i + 1]), float(v[i + 1]),
                                threshold)
        crossings.append(Crossing(when, DEATH if states[i] else BIRTH))

    return _merge_touches(crossings, float(np.min(np.diff(t))))


def _merge_touches(crossings: List[Crossing], spacing: float) -> List[Crossing]:
    merged: List[Crossing] = []
    i = 0
    while i < len(crossings):
        cur = crossings[i]
        nxt = crossings[i + 1] if i + 1 < len(crossings) else None
        if (nxt is not None and cur.direction == DEATH and nxt.direction == BIRTH
                and nxt.time - cur.time < spacing):
            merged.append(Crossing(0.5 * (cur.time + nxt.time), TANGENCY))
            i += 2
            continue
        merged.append(cur)
        i += 1
    return merged


def pair_series(alphas: Sequence[float], keep: PartitionSpec,
                kappa: float = 1.0) -> Tuple[Callable[[float], float], float, str]:
    """Measure function for a cavity or reservoir pair, its threshold and its kind."""
    vec = check_alphas(alphas)
    threshold = 0.0 if vec.size == 2 else 1.0

    def measure(t: float) -> float:
        return pair_measure(build_state(vec, t, kappa), keep).value

    kind = "concurrence" if vec.size == 2 else "lboe"
    return measure, threshold, kind


def scan_events(alphas: Sequence[float], kappa: float = 1.0, t_max: float = 6.0,
                steps: int = 2000, value_tol: float = VALUE_TOL,
                time_tol: float = TIME_TOL) -> List[EventReport]:
    """Numerical deaths and births of the cavity pair and the reservoir pair.

    The first cavity death and the first reservoir birth carry the analytic
    reference when one exists. A birth within 10 sqrt(value_tol) of t = 0 is
    the measure leaving its initial value and is not reported; deaths are
    always reported, however early.
    """
    if steps < 2 or not t_max > 0:
        raise DomainError(f"need steps >= 2 and t_max > 0, got steps={steps}, t_max={t_max}")
    vec = check_alphas(alphas)
    reference = analytic_times(vec, kappa)
    grid = np.linspace(0.0, t_max / kappa, steps)
    # measures leave their initial value at least quadratically in t
    onset = 10.0 * math.sqrt(value_tol)

    reports: List[EventReport] = []
    for keep, first_kind in ((CAVITIES, ESD), (RESERVOIRS, ESB)):
        measure, threshold, kind = pair_series(vec, keep, kappa)
        values = [measure(float(x)) for x in grid]
        crossings = detect_crossings(grid, values, threshold, measure=measure,
                                     value_tol=value_tol, time_tol=time_tol)
        referenced = False
        for crossing in crossings:
            if crossing.direction == TANGENCY:
                logger.info("%s %s touches its threshold at t=%.9f",
                            keep.label(), kind, crossing.time)
                continue
            event_kind = ESD if crossing.direction == DEATH else ESB
            if event_kind == ESB and crossing.time <= onset:
                logger.debug("%s birth at t=%.3e is the onset, not reported",
                             keep.label(), crossing.time)
                continue
            t_analytic = None
            if reference is not None and event_kind == first_kind and not referenced:
                t_analytic = reference.t_esd if event_kind == ESD else reference.t_esb
                referenced = True
            reports.append(EventReport(event_kind, keep, crossing.time, t_analytic, kind))
    logger.info("event scan for d=%d found %d events", vec.size - 1, len(reports))
    return reports


def dead_window(reports: Sequence[EventReport]) -> Optional[Tuple[float, float]]:
    """Interval between the first cavity death and the first reservoir birth, if ordered so."""
    deaths = [r.t_numeric for r in reports if r.kind == ESD and r.partition == CAVITIES]
    births = [r.t_numeric for r in reports if r.kind == ESB and r.partition == RESERVOIRS]
    if not deaths or not births:
        return None
    start, end = min(deaths), min(births)
    return (start, end) if start < end else None
