#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
cavity-entanglement: sudden death and birth of entanglement between two
leaking cavities and their reservoirs
"""

__version__ = "1.0.0"
__license__ = "MIT"

from .amplitudes import AmplitudeSet, amplitudes, damping_amplitude
from .config import EngineConfig
from .errors import EntanglementError, ErrorClassifier, ErrorDetails
from .events import EventReport, analytic_times, detect_crossings, scan_events
from .measures import MeasureValue, concurrence_two_qubit, i_concurrence, lboe, multipartite_cn
from .state import DensityMatrix, FourPartyState, PartitionSpec, build_state, reduced_density

__all__ = [
    "__version__",
    "AmplitudeSet",
    "amplitudes",
    "damping_amplitude",
    "EngineConfig",
    "EntanglementError",
    "ErrorClassifier",
    "ErrorDetails",
    "EventReport",
    "analytic_times",
    "detect_crossings",
    "scan_events",
    "MeasureValue",
    "concurrence_two_qubit",
    "i_concurrence",
    "lboe",
    "multipartite_cn",
    "DensityMatrix",
    "FourPartyState",
    "PartitionSpec",
    "build_state",
    "reduced_density",
]
