#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Error types and console error reporting for cavity-entanglement.

Every failure raised by the engine derives from ``EntanglementError`` and
carries a category and a process exit code, so the command-line front end can
classify it and suggest a remedy without inspecting messages.
"""

import datetime
import traceback
from dataclasses import dataclass
from typing import Optional

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


class EntanglementError(Exception):
    """Base class for all engine errors."""

    category = "UNKNOWN"
    exit_code = EXIT_VALIDATION


class DomainError(EntanglementError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""

    category = "DOMAIN_ERROR"


class NotNormalized(EntanglementError, ValueError):
    """Amplitudes whose Euclidean norm differs from one."""

    category = "NORMALIZATION_ERROR"

    def __init__(self, norm: float, tol: float = 1e-9):
        self.norm = float(norm)
        self.tol = tol
        super().__init__(
            f"amplitudes are not normalized: norm = {self.norm:.12g} "
            f"(tolerance {tol:g}); pass --normalize to rescale")


class BadPartition(EntanglementError, ValueError):
    """A partition or subsystem layout that the operation cannot handle."""

    category = "PARTITION_ERROR"


class BadDims(EntanglementError, ValueError):
    """Subsystem dimensions incompatible with the requested measure."""

    category = "DIMENSION_ERROR"


class ConfigError(EntanglementError, ValueError):
    """Invalid configuration, from a YAML file, the CLI or an OracleConfig."""

    category = "CONFIGURATION_ERROR"


class NonHermitian(EntanglementError, ValueError):
    """A matrix expected to be Hermitian is not, beyond tolerance."""

    category = "HERMITICITY_ERROR"

    def __init__(self, deviation: float, tol: float):
        self.deviation = float(deviation)
        super().__init__(
            f"matrix is not Hermitian: max |M - M^H| = {self.deviation:.3e} "
            f"exceeds {tol:g}")


class NonConvergence(EntanglementError, ArithmeticError):
    """An iterative numerical routine exceeded its iteration budget."""

    category = "NUMERICAL_ERROR"
    exit_code = EXIT_NUMERICAL


@dataclass
class ErrorDetails:
    """Structured error information for console reporting."""
    error_type: str
    error_message: str
    error_category: str
    suggested_action: str
    timestamp: str
    exit_code: int
    stack_trace: Optional[str] = None


class ErrorClassifier:
    """Classify engine errors and map them to suggested actions."""

    SUGGESTED_ACTIONS = {
        'DOMAIN_ERROR': 'Check times are non-negative, rates positive and amplitude ratios ordered',
        'NORMALIZATION_ERROR': 'Fix the amplitudes so their squares sum to one, or pass --normalize',
        'PARTITION_ERROR': 'Use a preset name or a subset such as c1+r2 that is neither empty nor all parties',
        'DIMENSION_ERROR': 'Use a measure that supports the local dimension (cn and concurrence need d=1)',
        'CONFIGURATION_ERROR': 'Validate the YAML file and flag values against the documented keys',
        'HERMITICITY_ERROR': 'Symmetrize the input matrix or check how it was assembled',
        'NUMERICAL_ERROR': 'Report the inputs; the solver exhausted its sweep budget',
        'UNKNOWN': 'Review the error message and stack trace, rerun with -vv for debug logs',
    }

    @classmethod
    def classify(cls, exception: BaseException) -> str:
        """Return the category of an exception."""
        if isinstance(exception, EntanglementError):
            return exception.category
        if isinstance(exception, (ValueError, TypeError)):
            return 'DOMAIN_ERROR'
        return 'UNKNOWN'

    @classmethod
    def get_suggested_action(cls, category: str) -> str:
        """Get suggested action for error category."""
        return cls.SUGGESTED_ACTIONS.get(
            category, cls.SUGGESTED_ACTIONS['UNKNOWN'])

    @classmethod
    def exit_code_for(cls, exception: BaseException) -> int:
        if isinstance(exception, EntanglementError):
            return exception.exit_code
        return EXIT_VALIDATION


def extract_from_exception(exception: BaseException,
                           with_trace: bool = False) -> ErrorDetails:
    """Extract error details from an exception."""
    category = ErrorClassifier.classify(exception)
    return ErrorDetails(
        error_type=type(exception).__name__,
        error_message=str(exception),
        error_category=category,
        suggested_action=ErrorClassifier.get_suggested_action(category),
        timestamp=datetime.datetime.now().isoformat(timespec="seconds"),
        exit_code=ErrorClassifier.exit_code_for(exception),
        stack_trace=traceback.format_exc() if with_trace else None,
    )


class ErrorReportFormatter:
    """Format error information for the terminal."""

    @staticmethod
    def format_for_console(error_details: ErrorDetails) -> str:
        """Format error details for console display."""
        formatted = (
            f"error: {error_details.error_message}\n"
            f"  type: {error_details.error_type} ({error_details.error_category})\n"
            f"  suggested action: {error_details.suggested_action}\n"
        )
        if error_details.stack_trace:
            formatted += f"\n{error_details.stack_trace}\n"
        return formatted
