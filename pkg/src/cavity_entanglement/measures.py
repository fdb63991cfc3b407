"""
Entanglement quantifiers for the cavity-reservoir states.

- concurrence_two_qubit: Wootters concurrence of a two-qubit density matrix.
- x_state_lambda / closed_form_c1r1: closed forms for the Markovian qubit case.
- i_concurrence: sqrt(2 (1 - tr rho_A^2)) for a pure-state bipartition.
- multipartite_cn: pure N-qubit concurrence from all subset purities.
- lboe: max of the trace norms of the partial transpose and the realignment.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import BadDims, DomainError, NotNormalized
from .numerics import hermitian_eigensystem, singular_values, trace_norm
from .state import (PARTIES, DensityMatrix, FourPartyState, PartitionSpec,
                    partial_transpose, realign, reduced_density)

MEASURE_KINDS = ("concurrence", "i_concurrence", "multipartite_cn", "lboe")

# Y ⊗ Y in the Fock basis {|0>, |1>} of each qubit
_SPIN_FLIP = np.array([[0, 0, 0, -1],
                       [0, 0, 1, 0],
                       [0, 1, 0, 0],
                       [-1, 0, 0, 0]], dtype=np.complex128)

# eigenvalues of rho below this fraction of its trace are treated as exact zeros
_RANK_CUTOFF = 1e-14


@dataclass(frozen=True)
class MeasureValue:
    """A named entanglement value."""
    kind: str
    value: float

    def __post_init__(self):
        if self.kind not in MEASURE_KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}")

    def __float__(self) -> float:
        return self.value


def purity(rho: DensityMatrix) -> float:
    """tr rho^2, evaluated as the squared Frobenius norm."""
    return float(np.sum(np.abs(rho.matrix) ** 2))


def concurrence_two_qubit(rho: DensityMatrix) -> MeasureValue:
    """Wootters concurrence max{0, l1 - l2 - l3 - l4}.

    The l_i are the square roots of the eigenvalues of rho (Y⊗Y) rho* (Y⊗Y),
    obtained without a non-Hermitian solver: with rho = V D V^H they are the
    singular values of L = D^{1/2} V^T (Y⊗Y) V D^{1/2}.
    """
    if rho.dims != (2, 2):
        raise BadDims(f"two-qubit concurrence needs dims (2, 2), got {rho.dims}")
    values, vectors = hermitian_eigensystem(rho.matrix)
    values = np.where(values > _RANK_CUTOFF * max(rho.trace(), 1.0), values, 0.0)
    root = np.sqrt(values)
    lmat = (root[:, None] * (vectors.T @ _SPIN_FLIP @ vectors)) * root[None, :]
    lambdas = singular_values(lmat)
    return MeasureValue("concurrence", max(0.0, float(lambdas[0] - np.sum(lambdas[1:]))))


def _check_pair(alpha: float, beta: float, tol: float = 1e-9):
    norm = math.hypot(alpha, beta)
    if abs(norm - 1.0) > tol:
        raise NotNormalized(norm, tol)


def x_state_lambda(which: str, alpha: float, beta: float, t: float,
                   kappa: float = 1.0) -> float:
    """Closed-form candidate negative eigenvalue of the partially transposed pair state.

    which="cavities":   e^{-kt} [beta^2 (1 - e^{-kt}) - |alpha beta|]
    which="reservoirs": (1 - e^{-kt}) [beta^2 e^{-kt} - |alpha beta|]
    """
    _check_pair(alpha, beta)
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t!r}")
    decay = math.exp(-kappa * t)
    leaked = -math.expm1(-kappa * t)
    ab = abs(alpha * beta)
    if which == "cavities":
        return decay * (beta ** 2 * leaked - ab)
    if which == "reservoirs":
        return leaked * (beta ** 2 * decay - ab)
    raise ValueError(f"which must be 'cavities' or 'reservoirs', got {which!r}")


def closed_form_c1r1(beta: float, t: float, kappa: float = 1.0) -> float:
    """Cavity-own-reservoir concurrence 2 beta^2 sqrt((1 - e^{-kt}) e^{-kt})."""
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t!r}")
    decay = math.exp(-kappa * t)
    return 2.0 * beta ** 2 * math.sqrt(-math.expm1(-kappa * t) * decay)


def i_concurrence_of(rho_a: DensityMatrix) -> float:
    """I-concurrence of a pure global state from the reduced state of one side."""
    return math.sqrt(max(0.0, 2.0 * (1.0 - purity(rho_a))))


def i_concurrence(state: FourPartyState, partition: PartitionSpec) -> MeasureValue:
    """Square root of the tangle across side A | side B."""
    return MeasureValue("i_concurrence", i_concurrence_of(reduced_density(state, partition)))


def multipartite_cn(state: FourPartyState) -> MeasureValue:
    """C_N = 2^{1-N/2} sqrt((2^N - 2) - sum_s tr rho_s^2) over all nonempty proper subsets s."""
    if state.d != 1:
        raise BadDims(f"multipartite concurrence needs qubits (d=1), got d={state.d}")
    n = len(PARTIES)
    total = 0.0
    for size in range(1, n):
        for subset in itertools.combinations(PARTIES, size):
            total += purity(reduced_density(state, PartitionSpec(frozenset(subset))))
    radicand = max(0.0, (2 ** n - 2) - total)
    return MeasureValue("multipartite_cn", 2.0 ** (1 - n / 2) * math.sqrt(radicand))


def lboe_components(rho: DensityMatrix) -> Tuple[float, float]:
    """(‖rho^{T_A}‖, ‖R(rho)‖) for a bipartite density matrix."""
    return trace_norm(partial_transpose(rho, 0)), trace_norm(realign(rho))


def lboe(rho: DensityMatrix) -> MeasureValue:
    """Lower bound of entanglement, 1 for separable states up to d for maximal entanglement."""
    pt_norm, realign_norm = lboe_components(rho)
    return MeasureValue("lboe", max(pt_norm, realign_norm))


def pair_measure(state: FourPartyState, keep: PartitionSpec) -> MeasureValue:
    """Concurrence for a reduced qubit pair, LBOE for higher cutoffs."""
    rho = reduced_density(state, keep)
    if len(rho.dims) != 2:
        raise BadDims(f"pair measures need two parties, got {keep.parties}")
    if rho.dims == (2, 2):
        return concurrence_two_qubit(rho)
    return lboe(rho)
