"""
Dense complex linear algebra for small matrices.

Hermitian eigenproblems are solved by cyclic Jacobi rotations. Each
off-diagonal element a_pq is first made real by a phase on column q, then
annihilated by a real plane rotation, exactly as in the real symmetric
algorithm. Singular values come from the eigenvalues of the smaller Gram
matrix. Sizes of interest are at most a few dozen rows.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from .config import NumericsConfig
from .errors import NonConvergence, NonHermitian

logger = logging.getLogger(__name__)

_settings = NumericsConfig()


def configure(settings: NumericsConfig) -> None:
    """Replace the process-wide default tolerances."""
    global _settings
    _settings = settings
    logger.debug("numerics settings: %s", settings)


def current_settings() -> NumericsConfig:
    return _settings


def as_complex_matrix(m) -> np.ndarray:
    """Return ``m`` as a finite 2-D complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains NaN or Inf entries")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product, (A⊗B)[i*rB + k, j*cB + l] = A[i, j] B[k, l]."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def hermiticity_deviation(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_hermitian(m, tol: Optional[float] = None) -> bool:
    a = as_complex_matrix(m)
    tol = _settings.hermitian_tol if tol is None else tol
    return a.shape[0] == a.shape[1] and hermiticity_deviation(a) <= tol


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _jacobi(m: np.ndarray, with_vectors: bool, tol: float,
            max_sweeps: int) -> Tuple[np.ndarray, np.ndarray]:
    a = m.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128) if with_vectors else None
    threshold = tol * max(1.0, float(np.linalg.norm(a)))
    # elements this small cannot keep the off-diagonal norm above threshold
    negligible = threshold / max(1, n * n)

    sweeps = 0
    while _off_norm(a) >= threshold:
        if sweeps >= max_sweeps:
            raise NonConvergence(
                f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {_off_norm(a):.3e})")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= negligible:
                    continue
                # phase so that a[p, q] becomes real and positive
                phase = apq / mag
                a[:, q] *= np.conj(phase)
                a[q, :] *= phase
                if v is not None:
                    v[:, q] *= np.conj(phase)

                app, aqq = a[p, p].real, a[q, q].real
                theta = 0.5 * math.atan2(2.0 * mag, aqq - app)
                c, s = math.cos(theta), math.sin(theta)

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                if v is not None:
                    vp, vq = v[:, p].copy(), v[:, q].copy()
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq

    logger.debug("Jacobi converged for n=%d in %d sweeps", n, sweeps)
    return np.real(np.diag(a)).copy(), v


def _prepare_hermitian(m, tol: Optional[float]) -> np.ndarray:
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    tol = _settings.hermitian_tol if tol is None else tol
    deviation = hermiticity_deviation(a)
    if deviation > tol:
        raise NonHermitian(deviation, tol)
    return 0.5 * (a + a.conj().T)


def _solver_args(offdiag_tol: Optional[float], max_sweeps: Optional[int]) -> Tuple[float, int]:
    return (_settings.offdiag_tol if offdiag_tol is None else offdiag_tol,
            _settings.max_sweeps if max_sweeps is None else max_sweeps)


def hermitian_eigenvalues(m, tol: Optional[float] = None,
                          offdiag_tol: Optional[float] = None,
                          max_sweeps: Optional[int] = None) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    Raises NonHermitian when max |M - M^H| exceeds ``tol`` and NonConvergence
    when the sweep budget is exhausted.
    """
    a = _prepare_hermitian(m, tol)
    values, _ = _jacobi(a, False, *_solver_args(offdiag_tol, max_sweeps))
    return np.sort(values)


def hermitian_eigensystem(m, tol: Optional[float] = None,
                          offdiag_tol: Optional[float] = None,
                          max_sweeps: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and the matching orthonormal eigenvectors as columns."""
    a = _prepare_hermitian(m, tol)
    values, vectors = _jacobi(a, True, *_solver_args(offdiag_tol, max_sweeps))
    order = np.argsort(values, kind="stable")
    return values[order], vectors[:, order]


def singular_values(m, negative_clamp: Optional[float] = None,
                    offdiag_tol: Optional[float] = None,
                    max_sweeps: Optional[int] = None) -> np.ndarray:
    """Singular values in descending order, min(rows, cols) of them."""
    a = as_complex_matrix(m)
    if a.size == 0:
        return np.zeros(0)
    clamp = _settings.negative_clamp if negative_clamp is None else negative_clamp
    rows, cols = a.shape
    gram = a.conj().T @ a if cols <= rows else a @ a.conj().T
    gram = 0.5 * (gram + gram.conj().T)
    values, _ = _jacobi(gram, False, *_solver_args(offdiag_tol, max_sweeps))

    scale = max(1.0, float(np.max(np.abs(values))))
    if np.any(values < -clamp * scale):
        raise NonConvergence(
            f"Gram matrix has eigenvalue {values.min():.3e} below the clamp -{clamp:g}")
    return np.sort(np.sqrt(np.clip(values, 0.0, None)))[::-1]


def trace_norm(m) -> float:
    """Trace norm ‖M‖ = tr (M M^H)^{1/2}.

    Hermitian input is summed over |eigenvalues| directly; anything else over
    its singular values.
    """
    a = as_complex_matrix(m)
    if a.shape[0] == a.shape[1] and hermiticity_deviation(a) <= _settings.hermitian_tol:
        return float(np.sum(np.abs(hermitian_eigenvalues(a))))
    return float(np.sum(singular_values(a)))
