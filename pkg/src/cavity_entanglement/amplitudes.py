"""
Markovian damping amplitudes of a cavity mode leaking into a flat reservoir.

A cavity photon survives with amplitude xi(t) = exp(-kappa t / 2) and is found
in the collective one-excitation reservoir state with chi(t) = sqrt(1 - e^{-kappa t}).
An n-photon Fock state splits binomially: the component with k photons
transferred has amplitude b_{n,k} = sqrt(C(n, k)) xi^{n-k} chi^k.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

MAX_PHOTONS = 12


@dataclass(frozen=True)
class AmplitudeSet:
    """Damping amplitudes at one instant; time in units of 1/kappa."""
    t: float
    kappa: float
    xi: float
    chi: float
    vartheta: float


def _check_time(t: float, kappa: float):
    if not math.isfinite(t) or t < 0:
        raise DomainError(f"time must be finite and >= 0, got {t!r}")
    if not math.isfinite(kappa) or kappa <= 0:
        raise DomainError(f"decay rate kappa must be > 0, got {kappa!r}")


def xi_chi(t: float, kappa: float = 1.0):
    """Return (xi, chi) with chi computed through expm1 to keep early times exact."""
    _check_time(t, kappa)
    xi = math.exp(-0.5 * kappa * t)
    chi = math.sqrt(-math.expm1(-kappa * t))
    return xi, chi


def amplitudes(t: float, kappa: float = 1.0) -> AmplitudeSet:
    """Evaluate xi, chi and the two-photon vacuum amplitude vartheta at time t."""
    xi, chi = xi_chi(t, kappa)
    xi2, chi2 = xi * xi, chi * chi
    # 1 - xi^4 written as chi^2 (1 + xi^2) to avoid cancellation at early times
    vartheta = math.sqrt(max(0.0, chi2 * (1.0 + xi2) - 2.0 * xi2 * chi2))
    return AmplitudeSet(t=t, kappa=kappa, xi=xi, chi=chi, vartheta=vartheta)


def _check_photons(n: int, k: int = 0):
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= MAX_PHOTONS:
        raise DomainError(f"photon number must be an integer in [0, {MAX_PHOTONS}], got {n!r}")
    if not isinstance(k, (int, np.integer)) or not 0 <= k <= n:
        raise DomainError(f"transferred excitations must satisfy 0 <= k <= n={n}, got {k!r}")


def binomial_amplitudes(n: int, xi: float, chi: float) -> np.ndarray:
    """b_{n,k} for k = 0..n at given (xi, chi), which need not be the Markov pair."""
    _check_photons(n)
    k = np.arange(n + 1)
    coeff = np.sqrt([math.comb(n, int(j)) for j in k])
    return coeff * np.power(xi, n - k) * np.power(chi, k)


def damping_row(n: int, t: float, kappa: float = 1.0) -> np.ndarray:
    """All binomial damping amplitudes b_{n,0..n}(t)."""
    xi, chi = xi_chi(t, kappa)
    return binomial_amplitudes(n, xi, chi)


def damping_amplitude(n: int, k: int, t: float, kappa: float = 1.0) -> float:
    """Amplitude of |n-k>_c |k̄>_r after an initial |n>_c |0̄>_r has evolved for time t."""
    _check_photons(n, k)
    xi, chi = xi_chi(t, kappa)
    return math.sqrt(math.comb(n, k)) * xi ** (n - k) * chi ** k


def beam_splitter_coefficients(n: int, xi: float, chi: float) -> np.ndarray:
    """Independent oracle for the binomial amplitudes.

    Expands (xi a^† + chi b^†)^n |0,0> / sqrt(n!) term by term as a polynomial
    in the two creation operators, then converts monomials a^†^{n-k} b^†^k |0,0>
    into normalized Fock states, which contributes sqrt((n-k)! k!).
    Returns the coefficient of |n-k, k> for k = 0..n.
    """
    _check_photons(n)
    # poly[k]: coefficient of a†^(n-k) b†^k, built by repeated multiplication
    poly = np.zeros(1)
    poly[0] = 1.0
    for _ in range(n):
        nxt = np.zeros(poly.size + 1)
        nxt[:-1] += xi * poly
        nxt[1:] += chi * poly
        poly = nxt
    norms = np.array([math.sqrt(math.factorial(n - k) * math.factorial(k)) for k in range(n + 1)])
    return poly * norms / math.sqrt(math.factorial(n))
