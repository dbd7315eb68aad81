"""
Custom exceptions for CubeLab.

This module defines custom exception classes for consistent error handling
across the CubeLab toolkit. Every error carries a human readable message and
an optional ``details`` mapping with the exact values that triggered it, so
that counterexamples can be serialized and replayed.
"""

from typing import Any, Dict, Optional


class CubeLabException(Exception):
    """Base exception class for CubeLab."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)


class SingularMatrixError(CubeLabException):
    """Raised when exact Gaussian elimination finds no pivot."""

    def __init__(self, message: str = "Matrix is singular", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)


class SingularBasisError(SingularMatrixError):
    """Raised when a lattice basis does not span a full-rank lattice."""

    def __init__(self, message: str = "Lattice basis is singular", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)


class DimensionMismatchError(CubeLabException):
    """Raised when vectors, matrices or bodies of different dimensions are combined."""

    def __init__(self, expected: int, actual: int, details: Optional[Dict[str, Any]] = None):
        message = f"Dimension mismatch: expected {expected}, got {actual}"
        super().__init__(message, details)
        self.expected = expected
        self.actual = actual


class DegenerateBoxError(CubeLabException):
    """Raised when a box has a zero-width (or inverted) axis."""

    def __init__(self, axis: int, details: Optional[Dict[str, Any]] = None):
        message = f"Box is degenerate along axis {axis}"
        super().__init__(message, details)
        self.axis = axis


class InvalidEpsError(CubeLabException):
    """Raised when an accuracy parameter lies outside its admissible interval."""

    def __init__(self, eps: Any, interval: str = "(0, 1)", details: Optional[Dict[str, Any]] = None):
        message = f"eps must lie in {interval}, got {eps}"
        super().__init__(message, details)


class DimensionTooSmallError(CubeLabException):
    """Raised when a construction needs a larger dimension."""

    def __init__(self, dim: int, minimum: int, details: Optional[Dict[str, Any]] = None):
        message = f"Dimension {dim} is too small, need at least {minimum}"
        super().__init__(message, details)


class PreconditionViolatedError(CubeLabException):
    """Raised when a body does not satisfy the placement a grid counting bound requires."""

    def __init__(self, message: str = "Precondition violated", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)


class DimensionLimitExceededError(CubeLabException):
    """Raised when enumeration is requested above the configured dimension limit."""

    def __init__(self, dim: int, limit: int, details: Optional[Dict[str, Any]] = None):
        message = f"Dimension {dim} exceeds the enumeration limit {limit}"
        super().__init__(message, details)


class DegenerateSlabError(CubeLabException):
    """Raised when an integer program slab has l_i == u_i."""

    def __init__(self, row: int, details: Optional[Dict[str, Any]] = None):
        message = f"Slab row {row} has zero width"
        super().__init__(message, details)


class OracleUnsoundError(CubeLabException):
    """Raised when a gap oracle answer fails its exact recheck."""

    def __init__(self, message: str = "Gap oracle returned an unsound answer", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)


GapOracleUnsoundError = OracleUnsoundError


class SearchDivergedError(CubeLabException):
    """Raised when the binary search exceeds its iteration cap."""

    def __init__(self, message: str = "Binary search exceeded its iteration cap", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)


class BracketInvariantError(CubeLabException):
    """Raised when a binary-search step breaks the bracket or progress invariant."""

    def __init__(self, message: str = "Bracket invariant violated", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)


class ConfigError(CubeLabException):
    """Raised when campaign or command parameters are out of range."""

    def __init__(self, message: str, field: Optional[str] = None, details: Optional[Dict[str, Any]] = None):
        if field:
            message = f"Invalid value for '{field}': {message}"
        super().__init__(message, details)


class InstanceFormatError(CubeLabException):
    """Raised when an input file cannot be parsed into an instance."""

    def __init__(self, path: str, reason: str, details: Optional[Dict[str, Any]] = None):
        message = f"Could not read '{path}': {reason}"
        super().__init__(message, details)
