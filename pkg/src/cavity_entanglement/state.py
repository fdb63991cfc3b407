"""
Four-party pure states of two cavities and their reservoirs.

Parties are ordered c1 ⊗ r1 ⊗ c2 ⊗ r2, each a (d+1)-level system whose reservoir
levels are the orthonormal collective states |k̄>. For an initial state
sum_n alpha_n |n>_c1 |n>_c2 |0̄>_r1 |0̄>_r2 each cavity splits binomially, so

    |Psi_t> = sum_n alpha_n sum_{j,k} b_{n,j} b_{n,k} |n-j, j, n-k, k>.
"""

import math
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from .amplitudes import binomial_amplitudes, xi_chi
from .errors import BadPartition, DomainError, NotNormalized
from .numerics import hermitian_eigenvalues, hermiticity_deviation

PARTIES: Tuple[str, ...] = ("c1", "r1", "c2", "r2")
MAX_CUTOFF = 6
NORM_TOL = 1e-9


@dataclass(frozen=True)
class PartitionSpec:
    """Side A of a bipartition of {c1, r1, c2, r2}; the complement is side B."""
    side_a: FrozenSet[str]

    def __post_init__(self):
        side = frozenset(self.side_a)
        object.__setattr__(self, "side_a", side)
        unknown = side - set(PARTIES)
        if unknown:
            raise BadPartition(f"unknown parties {sorted(unknown)}; expected a subset of {PARTIES}")
        if not side or side == frozenset(PARTIES):
            raise BadPartition("side A must be a nonempty proper subset of {c1, r1, c2, r2}")

    @classmethod
    def of(cls, *parties: str) -> "PartitionSpec":
        return cls(frozenset(parties))

    @classmethod
    def parse(cls, text: str) -> "PartitionSpec":
        """Parse ``c1+r2`` style party lists."""
        tokens = [tok.strip() for tok in text.replace(",", "+").split("+") if tok.strip()]
        return cls(frozenset(tokens))

    @property
    def parties(self) -> Tuple[str, ...]:
        """Side A in canonical order."""
        return tuple(p for p in PARTIES if p in self.side_a)

    @property
    def axes(self) -> Tuple[int, ...]:
        return tuple(PARTIES.index(p) for p in self.parties)

    def complement(self) -> "PartitionSpec":
        return PartitionSpec(frozenset(PARTIES) - self.side_a)

    def label(self) -> str:
        return "".join(self.parties)


@dataclass(frozen=True)
class FourPartyState:
    """Pure state on c1 ⊗ r1 ⊗ c2 ⊗ r2 with tensor[i_c1, i_r1, i_c2, i_r2]."""
    d: int
    tensor: np.ndarray
    t: float
    kappa: float

    @property
    def local_dim(self) -> int:
        return self.d + 1

    @property
    def amplitudes(self) -> np.ndarray:
        """Flat vector, index ((i_c1 D + i_r1) D + i_c2) D + i_r2."""
        return self.tensor.reshape(-1).copy()

    def norm(self) -> float:
        return float(np.linalg.norm(self.tensor))


@dataclass(frozen=True)
class DensityMatrix:
    """Density matrix with the dimensions of its ordered subsystems."""
    dims: Tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(x) for x in self.dims))
        total = int(np.prod(self.dims))
        if self.matrix.shape != (total, total):
            raise BadPartition(
                f"matrix shape {self.matrix.shape} does not match dims {self.dims}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def check(self, tol: float = 1e-10) -> None:
        """Raise unless Hermitian, unit-trace and positive semidefinite within tol."""
        deviation = hermiticity_deviation(self.matrix)
        if deviation > tol:
            raise DomainError(f"density matrix not Hermitian (deviation {deviation:.3e})")
        if abs(self.trace() - 1.0) > tol:
            raise DomainError(f"density matrix trace {self.trace():.12g} differs from 1")
        lowest = hermitian_eigenvalues(self.matrix)[0]
        if lowest < -tol:
            raise DomainError(f"density matrix has negative eigenvalue {lowest:.3e}")


def normalize_amplitudes(alphas: Sequence[complex]) -> Tuple[List[complex], float]:
    """Rescale amplitudes to unit norm; returns the new list and the factor applied."""
    vec = np.asarray(alphas, dtype=np.complex128)
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise DomainError("cannot normalize an all-zero amplitude list")
    factor = 1.0 / norm
    return [_plain(a * factor) for a in vec], factor


def _plain(z: complex):
    return float(z.real) if z.imag == 0 else complex(z)


def check_alphas(alphas: Sequence[complex], tol: float = NORM_TOL) -> np.ndarray:
    """Validate an amplitude list; returns it as a complex vector of unit norm.

    Lists within ``tol`` of unit norm are accepted and rescaled by their exact
    norm so that downstream states are normalized to rounding; anything further
    off raises NotNormalized.
    """
    vec = np.asarray(list(alphas), dtype=np.complex128)
    if vec.ndim != 1 or vec.size < 2:
        raise DomainError("need at least two amplitudes (alpha_0 and alpha_d)")
    d = vec.size - 1
    if d > MAX_CUTOFF:
        raise DomainError(f"Fock cutoff d={d} exceeds the supported maximum {MAX_CUTOFF}")
    if not np.all(np.isfinite(vec)):
        raise DomainError("amplitudes must be finite")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > tol:
        raise NotNormalized(norm, tol)
    return vec / norm


def build_state_from_damping(alphas: Sequence[complex], xi: float, chi: float,
                             t: float = float("nan"), kappa: float = 1.0) -> FourPartyState:
    """Assemble the four-party state for an arbitrary damping pair (xi, chi)."""
    vec = check_alphas(alphas)
    d = vec.size - 1
    size = d + 1
    tensor = np.zeros((size,) * 4, dtype=np.complex128)
    for n, alpha in enumerate(vec):
        if alpha == 0:
            continue
        b = binomial_amplitudes(n, xi, chi)
        block = alpha * np.outer(b, b)
        for j in range(n + 1):
            for k in range(n + 1):
                tensor[n - j, j, n - k, k] = block[j, k]
    return FourPartyState(d=d, tensor=tensor, t=t, kappa=kappa)


def build_state(alphas: Sequence[complex], t: float, kappa: float = 1.0) -> FourPartyState:
    """Exact state at time t for the initial state sum_n alpha_n |n,n>_cc |0̄,0̄>_rr."""
    xi, chi = xi_chi(t, kappa)
    return build_state_from_damping(alphas, xi, chi, t=t, kappa=kappa)


def _keep_axes(keep: "PartitionSpec | Iterable[str]") -> Tuple[int, ...]:
    spec = keep if isinstance(keep, PartitionSpec) else PartitionSpec(frozenset(keep))
    return spec.axes


def reduced_density(state: FourPartyState, keep: PartitionSpec) -> DensityMatrix:
    """Partial trace over the parties not in ``keep``; kept parties in canonical order."""
    kept = _keep_axes(keep)
    traced = tuple(ax for ax in range(4) if ax not in kept)
    size = state.local_dim
    m = np.transpose(state.tensor, kept + traced).reshape(size ** len(kept), -1)
    rho = m @ m.conj().T
    return DensityMatrix(dims=(size,) * len(kept), matrix=rho)


def _bipartite(rho: DensityMatrix) -> Tuple[int, int]:
    if len(rho.dims) != 2:
        raise BadPartition(
            f"operation needs exactly two subsystems, got dims {rho.dims}")
    return rho.dims


def partial_transpose(rho: DensityMatrix, transpose_side: int = 0) -> np.ndarray:
    """rho^{T_A}[(i,k),(j,l)] = rho[(j,k),(i,l)]; side 1 transposes B instead."""
    da, db = _bipartite(rho)
    if transpose_side not in (0, 1):
        raise BadPartition(f"transpose_side must be 0 or 1, got {transpose_side!r}")
    r4 = rho.matrix.reshape(da, db, da, db)
    axes = (2, 1, 0, 3) if transpose_side == 0 else (0, 3, 2, 1)
    return np.transpose(r4, axes).reshape(da * db, da * db)


def realign(rho: DensityMatrix) -> np.ndarray:
    """Realignment R(rho)[(i,j),(k,l)] = rho[(i,k),(j,l)], shape (dA², dB²)."""
    da, db = _bipartite(rho)
    r4 = rho.matrix.reshape(da, db, da, db)
    return np.transpose(r4, (0, 2, 1, 3)).reshape(da * da, db * db)


def excitation_pairing_holds(state: FourPartyState, tol: float = 0.0) -> bool:
    """True when amplitudes vanish unless i_c1 + i_r1 == i_c2 + i_r2."""
    size = state.local_dim
    idx = np.indices((size,) * 4)
    mask = (idx[0] + idx[1]) != (idx[2] + idx[3])
    return bool(np.all(np.abs(state.tensor[mask]) <= tol))


def schmidt_weights(state: FourPartyState, partition: PartitionSpec) -> np.ndarray:
    """Eigenvalues of the reduced state of side A, ascending."""
    return hermitian_eigenvalues(reduced_density(state, partition).matrix)


def is_normalized(state: FourPartyState, tol: float = 1e-12) -> bool:
    return math.isclose(state.norm(), 1.0, abs_tol=tol)
