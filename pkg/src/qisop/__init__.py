"""Quantitative isoperimetric computations for planar circular-arc regions."""

__version__ = "0.1.0"


class QisopError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(QisopError, ValueError):
    """An argument lies outside the admissible domain of an operation."""


class NumericError(QisopError, ArithmeticError):
    """An iterative method failed to converge."""
