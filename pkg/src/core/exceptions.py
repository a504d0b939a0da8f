"""
Custom Exceptions for Loewner-BT
================================

This module defines the exception hierarchy used throughout the package
for consistent error handling and reporting. Every error carries a
``details`` mapping that names the failing equation, the offending field
or a remediation hint, so that the CLI can print actionable messages.

Exception Hierarchy
-------------------
::

    LoewnerBTError (base)
    ├── ConfigError
    ├── LinalgError
    │   ├── SpectrumOverlap
    │   ├── NoStabilizingSolution
    │   ├── IndefiniteMatrix
    │   ├── ConvergenceFailure
    │   ├── DimensionMismatch
    │   └── NotHermitian
    ├── SamplingError
    │   ├── SingularResolvent
    │   ├── ParseError
    │   ├── InvariantViolation
    │   ├── MissingDerivative
    │   ├── DegeneratePoints
    │   └── NotHurwitz
    ├── InterpolationError
    │   ├── PointNotInRHP
    │   ├── SingularQv / SingularPw / SingularXp
    │   ├── DuplicatePoints
    │   ├── EmptyFrequencies
    │   └── ZeroFrequency
    ├── VariantError
    │   ├── FeedthroughNotPR / FeedthroughNotBR / FeedthroughSingular
    │   ├── NotSquare
    │   ├── GammaOutOfRange
    │   ├── ModePointMismatch
    │   ├── SingularTv / SingularTw
    │   └── AssumptionViolated
    └── ReductionError
        ├── RankDeficient
        ├── NotConjugateClosed
        ├── ResidueTooLarge
        ├── EmptyGrid
        ├── OrderOutOfRange
        ├── WeightCountMismatch
        └── TooFewNodes

Example
-------
>>> from src.core.exceptions import LinalgError, SpectrumOverlap
>>>
>>> try:
...     X = solve_sylvester(A, B, C)
... except SpectrumOverlap as e:
...     print(f"Shifted spectra overlap: {e}")
... except LinalgError as e:
...     print(f"Matrix equation failed: {e}")
"""

from __future__ import annotations

from typing import Any, Dict, Optional


class LoewnerBTError(Exception):
    """
    Base exception for all Loewner-BT errors.

    All custom exceptions in the package inherit from this class,
    allowing for broad exception catching when needed.

    Parameters
    ----------
    message : str
        Human-readable error message.
    details : dict, optional
        Additional context about the error.

    Attributes
    ----------
    message : str
        The error message.
    details : dict
        Additional error details.

    Example
    -------
    >>> raise LoewnerBTError("Something went wrong", details={"order": 3})
    """

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        if self.details:
            return f"{self.message} (Details: {self.details})"
        return self.message

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert exception to dictionary for serialization.

        Returns
        -------
        dict
            Dictionary representation of the error.
        """
        return {
            "error_type": self.__class__.__name__,
            "message": self.message,
            "details": self.details,
        }


class ConfigError(LoewnerBTError):
    """
    Raised when a configuration file cannot be loaded or is invalid.

    Example
    -------
    >>> raise ConfigError(
    ...     "Unknown configuration section",
    ...     details={"section": "plotting"}
    ... )
    """

    pass


# =============================================================================
# Linear Algebra Exceptions
# =============================================================================


class LinalgError(LoewnerBTError):
    """
    Base exception for matrix-equation and factorization failures.

    Parameters
    ----------
    message : str
        Human-readable error message.
    equation : str, optional
        Name of the matrix equation being solved (e.g. ``"sylvester"``).
    details : dict, optional
        Additional context about the error.
    """

    def __init__(
        self,
        message: str,
        equation: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.equation = equation
        full_details = details or {}
        if equation:
            full_details["equation"] = equation
        super().__init__(message, full_details)


class SpectrumOverlap(LinalgError):
    """
    Raised when spec(A) and spec(-B) are not separated.

    Example
    -------
    >>> raise SpectrumOverlap(
    ...     "Sylvester coefficients share eigenvalues",
    ...     equation="sylvester",
    ...     details={"gap": 0.0}
    ... )
    """

    pass


class NoStabilizingSolution(LinalgError):
    """Raised when a Riccati equation has no stabilizing solution."""

    pass


class IndefiniteMatrix(LinalgError):
    """
    Raised when a matrix expected to be PSD has a negative eigenvalue
    beyond the clip threshold.
    """

    pass


class ConvergenceFailure(LinalgError):
    """Raised when an eigenvalue or singular value routine fails."""

    pass


class DimensionMismatch(LinalgError):
    """
    Raised when operand shapes are inconsistent.

    Example
    -------
    >>> raise DimensionMismatch(
    ...     "C must have as many columns as A",
    ...     equation="sylvester",
    ...     details={"A": (3, 3), "C": (2, 4)}
    ... )
    """

    pass


class NotHermitian(LinalgError):
    """Raised when a matrix flagged Hermitian is not."""

    pass


# =============================================================================
# Sampling Exceptions
# =============================================================================


class SamplingError(LoewnerBTError):
    """
    Base exception for model evaluation and sample-file errors.

    Parameters
    ----------
    message : str
        Human-readable error message.
    path : str, optional
        File being read or written.
    field : str, optional
        Offending field of the file or data structure.
    details : dict, optional
        Additional context about the error.
    """

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        field: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.path = path
        self.field = field
        full_details = details or {}
        if path:
            full_details["path"] = path
        if field:
            full_details["field"] = field
        super().__init__(message, full_details)


class SingularResolvent(SamplingError):
    """
    Raised when s is (numerically) an eigenvalue of A.

    Example
    -------
    >>> raise SingularResolvent(
    ...     "sI - A is singular",
    ...     details={"s": "0+1j", "cond": 1e17}
    ... )
    """

    pass


class ParseError(SamplingError):
    """
    Raised when a sample or model file does not match its schema.

    Example
    -------
    >>> raise ParseError(
    ...     "Expected a [re, im] pair",
    ...     path="samples.json",
    ...     field="right[3].s",
    ...     details={"line": 12}
    ... )
    """

    pass


class InvariantViolation(SamplingError):
    """Raised when a sample set breaks one of its invariants."""

    pass


class MissingDerivative(SamplingError):
    """Raised when a Hermite (coincident) pair has no derivative sample."""

    pass


class DegeneratePoints(SamplingError):
    """Raised when interpolation points coincide within one side."""

    pass


class NotHurwitz(SamplingError):
    """
    Raised when a state-space model is required to be stable but is not.

    Example
    -------
    >>> raise NotHurwitz(
    ...     "A has eigenvalues in the closed right half-plane",
    ...     details={"max_real_part": 0.3}
    ... )
    """

    pass


# =============================================================================
# Interpolation Exceptions
# =============================================================================


class InterpolationError(LoewnerBTError):
    """
    Base exception for shift-system, PORK and pole-placement errors.

    Parameters
    ----------
    message : str
        Human-readable error message.
    hint : str, optional
        Remediation hint, typically naming an epsilon bound.
    details : dict, optional
        Additional context about the error.
    """

    def __init__(
        self,
        message: str,
        hint: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.hint = hint
        full_details = details or {}
        if hint:
            full_details["hint"] = hint
        super().__init__(message, full_details)


class PointNotInRHP(InterpolationError):
    """Raised when an ADI-mode point is not in the open right half-plane."""

    pass


class SingularQv(InterpolationError):
    """
    Raised when Q_v is numerically singular.

    Example
    -------
    >>> raise SingularQv(
    ...     "Q_v lost numerical rank",
    ...     hint="increase the real part of the shifts",
    ...     details={"cond": 3e13}
    ... )
    """

    pass


class SingularPw(InterpolationError):
    """Raised when P_w is numerically singular."""

    pass


class SingularXp(InterpolationError):
    """Raised when the pole-placement matrix X_p is numerically singular."""

    pass


class DuplicatePoints(InterpolationError):
    """Raised when a shift system is built from repeated points."""

    pass


class EmptyFrequencies(InterpolationError):
    """Raised when an epsilon bound is requested for no frequencies."""

    pass


class ZeroFrequency(InterpolationError):
    """Raised when a bound needs nonzero frequencies and gets omega = 0."""

    pass


# =============================================================================
# Variant Exceptions
# =============================================================================


class VariantError(LoewnerBTError):
    """
    Base exception for balanced-truncation variant errors.

    Parameters
    ----------
    message : str
        Human-readable error message.
    variant : str, optional
        The variant being computed (``"bt"``, ``"pr"``, ...).
    hint : str, optional
        Remediation hint.
    details : dict, optional
        Additional context about the error.
    """

    def __init__(
        self,
        message: str,
        variant: Optional[str] = None,
        hint: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.variant = variant
        self.hint = hint
        full_details = details or {}
        if variant:
            full_details["variant"] = variant
        if hint:
            full_details["hint"] = hint
        super().__init__(message, full_details)


class FeedthroughNotPR(VariantError):
    """
    Raised when D + D^T is not positive definite.

    Example
    -------
    >>> raise FeedthroughNotPR(
    ...     "D + D^T must be positive definite",
    ...     variant="pr",
    ...     details={"min_eig": -0.1}
    ... )
    """

    pass


class FeedthroughNotBR(VariantError):
    """Raised when I - D D^T or I - D^T D is not positive definite."""

    pass


class FeedthroughSingular(VariantError):
    """Raised when D D^T is singular (SW and BST variants)."""

    pass


class NotSquare(VariantError):
    """Raised when a square transfer function is required."""

    pass


class GammaOutOfRange(VariantError):
    """Raised when the H-infinity level gamma is not greater than one."""

    pass


class ModePointMismatch(VariantError):
    """
    Raised when the sample points do not fit the requested mode.

    Example
    -------
    >>> raise ModePointMismatch(
    ...     "ADI mode needs points in the open right half-plane",
    ...     variant="bt",
    ...     details={"mode": "adi", "min_real_part": 0.0}
    ... )
    """

    pass


class SingularTv(VariantError):
    """Raised when the right transformation T_v is numerically singular."""

    pass


class SingularTw(VariantError):
    """Raised when the left transformation T_w is numerically singular."""

    pass


class AssumptionViolated(VariantError):
    """Raised when a model does not satisfy a variant's standing assumption."""

    pass


# =============================================================================
# Reduction Exceptions
# =============================================================================


class ReductionError(LoewnerBTError):
    """
    Base exception for square-root reduction and post-processing errors.

    Example
    -------
    >>> raise ReductionError("Reduction failed", details={"order": 4})
    """

    pass


class RankDeficient(ReductionError):
    """
    Raised when the requested order exceeds the numerical rank.

    Parameters
    ----------
    message : str
        Human-readable error message.
    requested : int
        Requested reduced order.
    achievable_rank : int
        Largest order supported by the singular values.
    details : dict, optional
        Additional context about the error.
    """

    def __init__(
        self,
        message: str,
        requested: int,
        achievable_rank: int,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.requested = requested
        self.achievable_rank = achievable_rank
        full_details = details or {}
        full_details["requested"] = requested
        full_details["achievable_rank"] = achievable_rank
        super().__init__(message, full_details)


class NotConjugateClosed(ReductionError):
    """Raised when a point set is not closed under complex conjugation."""

    pass


class ResidueTooLarge(ReductionError):
    """Raised when realification leaves a large imaginary residue."""

    pass


class EmptyGrid(ReductionError):
    """Raised when an error estimate is requested on an empty grid."""

    pass


class OrderOutOfRange(ReductionError):
    """
    Raised when a reduced order is not a positive integer in range.

    Example
    -------
    >>> raise OrderOutOfRange("Order must be at least 1", details={"order": 0})
    """

    pass


class WeightCountMismatch(ReductionError):
    """Raised when quadrature weights do not match the node count."""

    pass


class TooFewNodes(ReductionError):
    """Raised when a quadrature rule needs more nodes than given."""

    pass
