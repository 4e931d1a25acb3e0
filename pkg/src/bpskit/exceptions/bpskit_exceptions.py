"""Custom exceptions for sampler, transform and estimator operations.

Every error carries the operation that failed plus free-form numeric context
so CLI reports and log records can point at the offending configuration.
Errors pickle with their attributes intact, so failures raised inside worker
processes reach the parent unchanged.
"""

from typing import Any


def _rebuild(
    cls: type["BpsKitError"], args: tuple[Any, ...], state: dict[str, Any]
) -> "BpsKitError":
    """Recreate a pickled error without re-running its constructor."""
    error = cls.__new__(cls, *args)
    Exception.__init__(error, *args)
    error.__dict__.update(state)
    return error


class BpsKitError(Exception):
    """Base exception for bpskit errors.

    Provides context about the failing operation.
    """

    def __init__(self, message: str, operation: str, **context: Any) -> None:
        """Initialize BpsKitError.

        Args:
            message: Error message
            operation: Operation that failed
            **context: Additional diagnostic values
        """
        self.operation = operation
        self.context = context
        super().__init__(message)

    def __reduce__(self) -> tuple[Any, ...]:
        """Pickle as (class, message args, attributes) for any subclass signature."""
        return (_rebuild, (type(self), self.args, dict(self.__dict__)))


class ConfigurationError(BpsKitError):
    """Invalid combination of run settings that schema validation cannot express."""


class DimensionMismatchError(BpsKitError):
    """A vector does not match the dimension of the target."""

    def __init__(self, operation: str, expected: int, actual: int) -> None:
        """Initialize DimensionMismatchError.

        Args:
            operation: Operation that failed
            expected: Target dimension
            actual: Dimension of the offending vector
        """
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"Expected a vector of dimension {expected}, got {actual}",
            operation,
            expected=expected,
            actual=actual,
        )


class UnsupportedCapabilityError(BpsKitError):
    """The target or transform does not provide the requested capability."""


class NumericalError(BpsKitError):
    """Base class for failures of a numerical procedure."""


class ZeroGradientError(NumericalError):
    """Reflection requested against a vanishing gradient."""


class BoundViolationError(NumericalError):
    """Thinning observed an intensity above its proposal bound.

    Includes the window and both rates so the bound configuration can be fixed.
    """

    def __init__(
        self,
        operation: str,
        window_start: float,
        window_end: float,
        bound: float,
        observed: float,
    ) -> None:
        """Initialize BoundViolationError.

        Args:
            operation: Operation that failed
            window_start: Start of the thinning window along the ray
            window_end: End of the thinning window along the ray
            bound: Proposal intensity used on the window
            observed: True intensity that exceeded it
        """
        self.window_start = window_start
        self.window_end = window_end
        self.bound = bound
        self.observed = observed
        super().__init__(
            f"Intensity {observed!r} exceeds thinning bound {bound!r} "
            f"on window [{window_start!r}, {window_end!r}]",
            operation,
            window_start=window_start,
            window_end=window_end,
            bound=bound,
            observed=observed,
        )


class EstimationError(NumericalError):
    """An estimator cannot be formed from the supplied trajectory."""


class TrajectoryError(BpsKitError):
    """A trajectory query falls outside the recorded path."""


class TrajectoryFormatError(TrajectoryError):
    """A trajectory file is malformed or inconsistent with its siblings."""

    def __init__(self, message: str, operation: str, path: str | None = None) -> None:
        """Initialize TrajectoryFormatError.

        Args:
            message: Error message
            operation: Operation that failed
            path: File that triggered the error (if applicable)
        """
        self.path = path
        super().__init__(message, operation, path=path)
