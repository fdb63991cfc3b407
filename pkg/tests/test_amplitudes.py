"""
Tests for the Markovian damping amplitudes and their binomial generalization.
"""

import math

import numpy as np
import pytest

from cavity_entanglement.amplitudes import (MAX_PHOTONS, amplitudes, beam_splitter_coefficients,
                                            binomial_amplitudes, damping_amplitude, damping_row)
from cavity_entanglement.errors import DomainError

GRID = np.linspace(0.0, 10.0, 201)


class TestAmplitudeSet:
    """xi, chi and vartheta at chosen times."""

    def test_initial_condition(self):
        """At t=0 the photon is still in the cavity."""
        amp = amplitudes(0.0)
        assert (amp.xi, amp.chi, amp.vartheta) == (1.0, 0.0, 0.0)

    def test_half_life(self):
        """At t = ln 2 / kappa both amplitudes equal 1/sqrt(2)."""
        amp = amplitudes(math.log(2))
        assert amp.xi == pytest.approx(1 / math.sqrt(2), abs=1e-12)
        assert amp.chi == pytest.approx(1 / math.sqrt(2), abs=1e-12)

    def test_full_decay(self):
        """Long times transfer everything to the reservoir."""
        amp = amplitudes(40.0)
        assert amp.xi == pytest.approx(0.0, abs=1e-8)
        assert amp.chi == pytest.approx(1.0, abs=1e-12)
        assert amp.vartheta == pytest.approx(1.0, abs=1e-12)

    def test_kappa_scales_time(self):
        """Only kappa t matters."""
        assert amplitudes(0.5, kappa=2.0).xi == pytest.approx(amplitudes(1.0).xi, abs=1e-15)

    @pytest.mark.parametrize("t", GRID)
    def test_invariants(self, t):
        """xi^2 + chi^2 = 1, vartheta = chi^2 and both lie in [0, 1]."""
        amp = amplitudes(float(t))
        assert amp.xi ** 2 + amp.chi ** 2 == pytest.approx(1.0, abs=1e-12)
        assert amp.vartheta == pytest.approx(amp.chi ** 2, abs=1e-12)
        assert 0.0 <= amp.xi <= 1.0 and 0.0 <= amp.chi <= 1.0

    def test_monotonicity(self):
        """xi strictly decreases and chi strictly increases."""
        xs = [amplitudes(float(t)) for t in GRID]
        assert all(a.xi > b.xi for a, b in zip(xs, xs[1:]))
        assert all(a.chi < b.chi for a, b in zip(xs, xs[1:]))

    @pytest.mark.parametrize("t, kappa", [(-0.1, 1.0), (1.0, 0.0), (1.0, -2.0), (math.inf, 1.0)])
    def test_domain_errors(self, t, kappa):
        """Negative times and non-positive rates are rejected."""
        with pytest.raises(DomainError):
            amplitudes(t, kappa)


class TestDampingAmplitude:
    """Binomial amplitudes b_{n,k}."""

    def test_two_photon_middle_term(self):
        """b_{2,1}(ln 2) = sqrt(2) xi chi = 1/sqrt(2)."""
        assert damping_amplitude(2, 1, math.log(2)) == pytest.approx(1 / math.sqrt(2), abs=1e-12)

    @pytest.mark.parametrize("t", [0.0, 0.3, 1.7])
    def test_single_photon(self, t):
        """n=1 reproduces xi and chi."""
        amp = amplitudes(t)
        assert damping_amplitude(1, 0, t) == pytest.approx(amp.xi, abs=1e-15)
        assert damping_amplitude(1, 1, t) == pytest.approx(amp.chi, abs=1e-15)

    def test_two_photon_vacuum_term(self):
        """b_{2,2} equals vartheta on the grid."""
        for t in GRID:
            amp = amplitudes(float(t))
            assert damping_amplitude(2, 2, float(t)) == pytest.approx(amp.vartheta, abs=1e-12)

    def test_normalization(self):
        """sum_k b_{n,k}^2 = 1 for every n <= 12 on the grid."""
        for n in range(MAX_PHOTONS + 1):
            for t in GRID:
                assert np.sum(damping_row(n, float(t)) ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_row_matches_single_values(self):
        """damping_row agrees with damping_amplitude entry by entry."""
        row = damping_row(5, 0.8)
        assert np.allclose(row, [damping_amplitude(5, k, 0.8) for k in range(6)], atol=1e-15)

    @pytest.mark.parametrize("n, k", [(2, 3), (13, 0), (-1, 0), (2, -1)])
    def test_invalid_indices(self, n, k):
        """k outside [0, n] or n above the cap raise DomainError."""
        with pytest.raises(DomainError):
            damping_amplitude(n, k, 0.5)


class TestBeamSplitterOracle:
    """Independent expansion of (xi a^† + chi b^†)^n |0,0> / sqrt(n!)."""

    @pytest.mark.parametrize("n", range(MAX_PHOTONS + 1))
    def test_matches_binomial_form(self, n):
        """Polynomial expansion and closed form agree."""
        for t in (0.0, 0.2, math.log(2), 2.5):
            amp = amplitudes(t)
            oracle = beam_splitter_coefficients(n, amp.xi, amp.chi)
            assert np.allclose(oracle, binomial_amplitudes(n, amp.xi, amp.chi), atol=1e-12)

    def test_arbitrary_pair(self):
        """The identity holds for any (xi, chi), not only the Markov pair."""
        oracle = beam_splitter_coefficients(3, 0.3, 0.7)
        assert np.allclose(oracle, binomial_amplitudes(3, 0.3, 0.7), atol=1e-14)
