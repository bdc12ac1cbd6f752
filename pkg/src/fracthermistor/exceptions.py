"""Custom exceptions for fractional-thermistor.

This module defines the exception hierarchy used throughout the package to
provide clear and actionable error information when a computation cannot
proceed. Every exception carries the process exit code the command-line
front end maps it to.

Example:
    Handling specific exceptions::

        from fracthermistor import run
        from fracthermistor.exceptions import (
            DegenerateDenominatorError,
            NonConvergenceError,
        )

        try:
            record = run(config)
        except NonConvergenceError as e:
            print(f"Picard stalled at step {e.step}: {e.residuals[-1]:.3e}")
        except DegenerateDenominatorError:
            print("The conductivity integral collapsed")
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Tuple, Type


class ThermistorError(Exception):
    """Base exception for all fractional-thermistor errors.

    All other exceptions in this module inherit from this class,
    allowing you to catch every package error with a single
    except clause.

    Attributes:
        message: Human-readable error message.
        details: Optional additional error details.
        exit_code: Exit code used by the command-line interface.

    Example:
        Catching all package errors::

            try:
                run(config)
            except ThermistorError as e:
                print(f"Run failed: {e.message}")
    """

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        details: Optional[Any] = None,
    ) -> None:
        """Initialize the exception.

        Args:
            message: Human-readable error message.
            details: Optional additional error details.
        """
        self.message = message
        self.details = details
        super().__init__(message)

    def __str__(self) -> str:
        """Return string representation of the error."""
        if self.details:
            return f"{self.message}: {self.details}"
        return self.message

    def __repr__(self) -> str:
        """Return detailed representation of the error."""
        return f"{self.__class__.__name__}(message={self.message!r}, details={self.details!r})"

    def __reduce__(self) -> Tuple[Any, ...]:
        """Pickle by attributes, so errors cross process boundaries in studies."""
        return (_restore_error, (type(self), self.__dict__.copy()))


def _restore_error(cls: Type[ThermistorError], state: Dict[str, Any]) -> ThermistorError:
    error = cls.__new__(cls)
    Exception.__init__(error, state.get("message"))
    error.__dict__.update(state)
    return error


class ConfigurationError(ThermistorError):
    """Exception raised when a configuration cannot be read or validated.

    Attributes:
        key: Name of the offending configuration key, when known.

    Example:
        Reporting the offending key::

            try:
                load_config("run.cfg")
            except ConfigurationError as e:
                print(f"bad key {e.key!r}: {e.message}")
    """

    exit_code = 2

    def __init__(
        self,
        message: str = "Invalid configuration",
        key: Optional[str] = None,
        details: Optional[Any] = None,
    ) -> None:
        """Initialize the configuration error.

        Args:
            message: Human-readable error message.
            key: Offending configuration key.
            details: Optional additional error details.
        """
        self.key = key
        super().__init__(message, details)

    def __str__(self) -> str:
        """Return string representation of the error."""
        base = f"[{self.key}] {self.message}" if self.key else self.message
        if self.details:
            return f"{base}: {self.details}"
        return base


class HypothesisError(ThermistorError):
    """Exception raised when a conductivity or initial datum fails its hypotheses.

    Attributes:
        report: The hypothesis report that failed, if any.
    """

    exit_code = 3

    def __init__(
        self,
        message: str = "Hypothesis check failed",
        report: Optional[Any] = None,
    ) -> None:
        """Initialize the hypothesis error.

        Args:
            message: Human-readable error message.
            report: Failing hypothesis report.
        """
        self.report = report
        super().__init__(message, details=None)


class SolverError(ThermistorError):
    """Exception raised when the time stepper cannot produce a step."""

    exit_code = 4


class NonConvergenceError(SolverError):
    """Exception raised when the Picard iteration exceeds its budget.

    Attributes:
        step: Index k of the step being computed (the solve targets k + 1).
        residuals: Infinity-norm increments of every Picard iterate.
        partial: Partial run record attached by ``run``, if any.

    Example:
        Inspecting the residual history::

            try:
                run(config)
            except NonConvergenceError as e:
                for m, r in enumerate(e.residuals):
                    print(m, r)
    """

    def __init__(
        self,
        step: int,
        residuals: List[float],
        message: Optional[str] = None,
    ) -> None:
        """Initialize the nonconvergence error.

        Args:
            step: Index of the step being computed.
            residuals: Residual history of the Picard loop.
            message: Optional override of the default message.
        """
        self.step = step
        self.residuals = list(residuals)
        self.partial: Optional[Any] = None
        last = self.residuals[-1] if self.residuals else float("nan")
        super().__init__(
            message
            or f"Picard iteration did not converge at step {step} (residual {last:.3e})",
            details=None,
        )

    def __str__(self) -> str:
        """Return string representation including the residual history."""
        history = ", ".join(f"{r:.3e}" for r in self.residuals)
        return f"{self.message}; residuals=[{history}]"


class DegenerateDenominatorError(SolverError):
    """Exception raised when the integral of f(u) collapses to zero.

    Attributes:
        value: The offending value of the integral.
    """

    def __init__(self, value: float, details: Optional[Any] = None) -> None:
        """Initialize the degenerate denominator error.

        Args:
            value: Computed integral of f(u).
            details: Optional additional error details.
        """
        self.value = value
        self.partial: Optional[Any] = None
        super().__init__(
            f"Integral of f(u) is {value:.3e}, at or below the degeneracy threshold",
            details,
        )


class StudyError(ThermistorError):
    """Exception raised when one point of a convergence study fails.

    Attributes:
        axis_value: The step length or degree at which the point failed.
        cause: The underlying package error.
    """

    exit_code = 5

    def __init__(self, axis_value: float, cause: BaseException) -> None:
        """Initialize the study error.

        Args:
            axis_value: Failing axis value.
            cause: Underlying exception.
        """
        self.axis_value = axis_value
        self.cause = cause
        super().__init__(f"Study point {axis_value!r} failed", details=str(cause))


class ContractViolationError(ThermistorError):
    """Exception raised when an operation receives arguments it cannot accept.

    Example:
        >>> history_combination(history[:2], weights, k=3)
        Traceback (most recent call last):
        ContractViolationError: history must hold k + 1 = 4 entries, got 2
    """


class BoundaryViolationError(ContractViolationError):
    """Exception raised when a function does not vanish at x = -1 and x = 1.

    Attributes:
        value: Largest absolute boundary value found.
        tolerance: Tolerance that was exceeded.

    An initial datum outside H1_0 is not admissible, so the command-line front end
    reports it with the hypothesis exit code.
    """

    exit_code = 3

    def __init__(self, value: float, tolerance: float, what: str = "function") -> None:
        """Initialize the boundary violation error.

        Args:
            value: Largest absolute boundary value.
            tolerance: Accepted tolerance.
            what: Name of the offending function for the message.
        """
        self.value = value
        self.tolerance = tolerance
        super().__init__(
            f"{what} must vanish at x = -1 and x = 1 "
            f"(|value| = {value:.3e} > {tolerance:.0e})"
        )


class NumericalError(ThermistorError):
    """Exception raised when an internal numerical routine fails.

    These should never occur for valid inputs and indicate a bug or an
    input far outside the tested range.
    """


class QuadratureError(NumericalError):
    """Exception raised when the Gauss-Lobatto root solver fails."""


class FactorizationError(NumericalError):
    """Exception raised when the banded Cholesky factorization fails."""


class OracleError(NumericalError):
    """Exception raised when the Caputo oracle stops improving under refinement."""
