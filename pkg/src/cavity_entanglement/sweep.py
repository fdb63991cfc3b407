"""
Time sweeps of entanglement series over named partitions.

Preset names:

    cc, rr, c1r1, c1r2           pair measures (concurrence for d=1, LBOE otherwise)
    c1r1_vs_c2r2, c1r2_vs_c2r1,
    c1_vs_rest, r1_vs_rest,
    cc_vs_rr                     I-concurrence of a pure-state bipartition
    cn                           multipartite concurrence (d=1 only)

Custom series are written ``pair:c1+r2`` or ``cut:c1+c2``.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import numerics
from .errors import BadDims, BadPartition, DomainError
from .measures import i_concurrence, multipartite_cn, pair_measure
from .state import FourPartyState, PartitionSpec, build_state, check_alphas

logger = logging.getLogger(__name__)

PAIR = "pair"
CUT = "cut"
MULTIPARTITE = "cn"


@dataclass(frozen=True)
class SeriesSpec:
    """One output column: a measure over a partition."""
    name: str
    kind: str
    partition: Optional[PartitionSpec] = None

    def evaluate(self, state: FourPartyState) -> float:
        if self.kind == PAIR:
            return pair_measure(state, self.partition).value
        if self.kind == CUT:
            return i_concurrence(state, self.partition).value
        return multipartite_cn(state).value

    def measure_kind(self, d: int) -> str:
        if self.kind == PAIR:
            return "concurrence" if d == 1 else "lboe"
        if self.kind == CUT:
            return "i_concurrence"
        return "multipartite_cn"


PRESETS = {
    "cc": SeriesSpec("cc", PAIR, PartitionSpec.of("c1", "c2")),
    "rr": SeriesSpec("rr", PAIR, PartitionSpec.of("r1", "r2")),
    "c1r1": SeriesSpec("c1r1", PAIR, PartitionSpec.of("c1", "r1")),
    "c1r2": SeriesSpec("c1r2", PAIR, PartitionSpec.of("c1", "r2")),
    "c1r1_vs_c2r2": SeriesSpec("c1r1_vs_c2r2", CUT, PartitionSpec.of("c1", "r1")),
    "c1r2_vs_c2r1": SeriesSpec("c1r2_vs_c2r1", CUT, PartitionSpec.of("c1", "r2")),
    "c1_vs_rest": SeriesSpec("c1_vs_rest", CUT, PartitionSpec.of("c1")),
    "r1_vs_rest": SeriesSpec("r1_vs_rest", CUT, PartitionSpec.of("r1")),
    "cc_vs_rr": SeriesSpec("cc_vs_rr", CUT, PartitionSpec.of("c1", "c2")),
    "cn": SeriesSpec("cn", MULTIPARTITE),
}


def resolve_series(name: str, d: int) -> SeriesSpec:
    """Map a preset or ``pair:``/``cut:`` string to a SeriesSpec valid for cutoff d."""
    key = name.strip()
    if key in PRESETS:
        spec = PRESETS[key]
    elif ":" in key:
        kind, _, parties = key.partition(":")
        if kind not in (PAIR, CUT):
            raise BadPartition(f"unknown series kind {kind!r} in {name!r}; use pair: or cut:")
        partition = PartitionSpec.parse(parties)
        if kind == PAIR and len(partition.parties) != 2:
            raise BadPartition(f"pair series need exactly two parties, got {name!r}")
        spec = SeriesSpec(f"{kind}_{partition.label()}", kind, partition)
    else:
        raise BadPartition(
            f"unknown partition {name!r}; presets are {', '.join(PRESETS)}")
    if spec.kind == MULTIPARTITE and d != 1:
        raise BadDims(f"preset cn needs qubit cavities (two amplitudes), got d={d}")
    return spec


@dataclass
class SweepConfig:
    alphas: List[float]
    kappa: float = 1.0
    t_max: float = 6.0
    steps: int = 2000
    partitions: List[str] = field(default_factory=lambda: ["cc", "rr"])
    workers: int = 1

    def validate(self) -> Tuple[np.ndarray, List[SeriesSpec]]:
        """Check the configuration; returns the amplitude vector and the series."""
        if int(self.steps) != self.steps or self.steps < 2:
            raise DomainError(f"steps must be an integer >= 2, got {self.steps!r}")
        if not self.t_max > 0:
            raise DomainError(f"t_max must be > 0, got {self.t_max!r}")
        if not self.kappa > 0:
            raise DomainError(f"kappa must be > 0, got {self.kappa!r}")
        if int(self.workers) != self.workers or self.workers < 1:
            raise DomainError(f"workers must be a positive integer, got {self.workers!r}")
        vec = check_alphas(self.alphas)
        if not self.partitions:
            raise BadPartition("no partitions requested")
        series = [resolve_series(name, vec.size - 1) for name in self.partitions]
        return vec, series

    def grid(self) -> np.ndarray:
        """Time grid; t_max is in units of 1/kappa."""
        return np.linspace(0.0, self.t_max / self.kappa, int(self.steps))


@dataclass(frozen=True)
class SweepResult:
    times: np.ndarray
    names: List[str]
    values: np.ndarray
    measure_kinds: List[str]

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.names.index(name)]


def _row(t: float, alphas: np.ndarray, kappa: float,
         series: Sequence[SeriesSpec]) -> List[float]:
    state = build_state(alphas, t, kappa)
    return [spec.evaluate(state) for spec in series]


def run_sweep(config: SweepConfig) -> SweepResult:
    """Evaluate every requested series on the time grid, rows in time order."""
    vec, series = config.validate()
    times = config.grid()
    row = partial(_row, alphas=vec, kappa=config.kappa, series=series)

    if config.workers > 1:
        chunk = max(1, len(times) // (4 * config.workers))
        with ProcessPoolExecutor(max_workers=int(config.workers),
                                 initializer=numerics.configure,
                                 initargs=(numerics.current_settings(),)) as executor:
            rows = list(executor.map(row, times.tolist(), chunksize=chunk))
    else:
        rows = [row(t) for t in times.tolist()]

    logger.info("sweep d=%d over %d points for %s", vec.size - 1, len(times),
                ", ".join(s.name for s in series))
    return SweepResult(
        times=times,
        names=[s.name for s in series],
        values=np.asarray(rows, dtype=float).reshape(len(times), len(series)),
        measure_kinds=[s.measure_kind(vec.size - 1) for s in series],
    )


def measure_function(alphas: Sequence[float], name: str,
                     kappa: float = 1.0) -> Callable[[float], float]:
    """Single series as a function of time, for refinement between grid points."""
    vec = check_alphas(alphas)
    spec = resolve_series(name, vec.size - 1)

    def measure(t: float) -> float:
        return spec.evaluate(build_state(vec, t, kappa))

    return measure
