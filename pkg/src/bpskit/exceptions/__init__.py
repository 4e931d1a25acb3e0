"""Exception hierarchy for bpskit."""

from .bpskit_exceptions import (
    BoundViolationError,
    BpsKitError,
    ConfigurationError,
    DimensionMismatchError,
    EstimationError,
    NumericalError,
    TrajectoryError,
    TrajectoryFormatError,
    UnsupportedCapabilityError,
    ZeroGradientError,
)

__all__ = [
    "BoundViolationError",
    "BpsKitError",
    "ConfigurationError",
    "DimensionMismatchError",
    "EstimationError",
    "NumericalError",
    "TrajectoryError",
    "TrajectoryFormatError",
    "UnsupportedCapabilityError",
    "ZeroGradientError",
]
