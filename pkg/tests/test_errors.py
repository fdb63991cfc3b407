"""
Tests for error classification and console formatting.
"""

import pytest

from cavity_entanglement.errors import (EXIT_NUMERICAL, EXIT_VALIDATION, BadDims, BadPartition,
                                        ConfigError, DomainError, EntanglementError,
                                        ErrorClassifier, ErrorReportFormatter, NonConvergence,
                                        NonHermitian, NotNormalized, extract_from_exception)


class TestErrorClassifier:
    """Categories, actions and exit codes."""

    @pytest.mark.parametrize("exc, category", [
        (DomainError("t < 0"), "DOMAIN_ERROR"),
        (NotNormalized(1.2), "NORMALIZATION_ERROR"),
        (BadPartition("empty"), "PARTITION_ERROR"),
        (BadDims("d=2"), "DIMENSION_ERROR"),
        (ConfigError("bogus"), "CONFIGURATION_ERROR"),
        (NonHermitian(0.1, 1e-10), "HERMITICITY_ERROR"),
        (NonConvergence("budget"), "NUMERICAL_ERROR"),
        (ValueError("plain"), "DOMAIN_ERROR"),
        (RuntimeError("other"), "UNKNOWN"),
    ])
    def test_classify(self, exc, category):
        """Each error maps to its category and a non-empty suggestion."""
        assert ErrorClassifier.classify(exc) == category
        assert ErrorClassifier.get_suggested_action(category)

    def test_unknown_category_action(self):
        """Unrecognised categories fall back to the generic action."""
        assert (ErrorClassifier.get_suggested_action("NOPE")
                == ErrorClassifier.SUGGESTED_ACTIONS["UNKNOWN"])

    def test_exit_codes(self):
        """Validation failures exit 2, numerical failures 3."""
        assert ErrorClassifier.exit_code_for(DomainError("x")) == EXIT_VALIDATION
        assert ErrorClassifier.exit_code_for(NonConvergence("x")) == EXIT_NUMERICAL
        assert ErrorClassifier.exit_code_for(ValueError("x")) == EXIT_VALIDATION

    def test_hierarchy(self):
        """Engine errors share a base and stay catchable as builtins."""
        assert isinstance(NotNormalized(2.0), EntanglementError)
        assert isinstance(NotNormalized(2.0), ValueError)
        assert isinstance(NonConvergence("x"), ArithmeticError)

    def test_not_normalized_message(self):
        """The message carries the norm to 12 significant digits."""
        exc = NotNormalized(0.7071067811865476)
        assert exc.norm == pytest.approx(0.7071067811865476)
        assert "norm = 0.707106781187" in str(exc)
        assert "--normalize" in str(exc)


class TestErrorReport:
    """Console reports."""

    def test_format(self):
        """The report shows message, type, category and suggestion."""
        details = extract_from_exception(BadDims("cn needs qubits"))
        text = ErrorReportFormatter.format_for_console(details)
        assert text.startswith("error: cn needs qubits\n")
        assert "type: BadDims (DIMENSION_ERROR)" in text
        assert "suggested action:" in text
        assert details.stack_trace is None
        assert details.exit_code == EXIT_VALIDATION

    def test_stack_trace(self):
        """with_trace includes the traceback of the active exception."""
        try:
            raise NonConvergence("Jacobi eigensolver did not converge")
        except NonConvergence as exc:
            details = extract_from_exception(exc, with_trace=True)
        assert "Traceback" in details.stack_trace
        assert details.exit_code == EXIT_NUMERICAL
        assert details.stack_trace in ErrorReportFormatter.format_for_console(details)
