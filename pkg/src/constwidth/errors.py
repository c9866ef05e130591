"""Exception hierarchy. Construction errors are ``ValueError`` subclasses."""

from __future__ import annotations


class ConstwidthError(Exception):
    """Base class for all package errors."""


class ConstructionError(ConstwidthError, ValueError):
    """A curve could not be built from the given parameters."""


class HarmonicViolation(ConstructionError):
    """A profile harmonic is not odd and at least 3."""


class AmplitudeViolation(ConstructionError):
    """The profile reaches half the diameter in absolute value."""

    def __init__(self, message: str, theta: float, value: float):
        super().__init__(message)
        self.theta = theta
        self.value = value


class BadOrder(ConstructionError):
    """Polygon order too small for a rotor curve."""


class FrequencyViolation(ConstructionError):
    """A rotor displacement frequency is not a positive multiple of n."""


class GuardViolation(ConstructionError):
    """Rotor displacement exceeds the smallness guard."""

    def __init__(self, message: str, measured: float, bound: float):
        super().__init__(message)
        self.measured = measured
        self.bound = bound


class EvenOrder(ConstructionError):
    """Reuleaux polygons need an odd number of vertices."""


class BadRadius(ConstructionError):
    """Rounding radius outside ``[0, D/2)``."""


class SingularPoint(ConstwidthError, ArithmeticError):
    """Curve derivative vanishes where a tangent is required."""


class NonConvergence(ConstwidthError, ArithmeticError):
    """An iterative numerical routine exhausted its budget."""


class NormalMiss(ConstwidthError):
    """The point at distance D along the inward normal is off the curve."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class NonMonotoneAngle(ConstwidthError):
    """Diametral chord angle fails to increase strictly."""
