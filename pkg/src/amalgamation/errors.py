"""Exceptions raised by the amalgamation layer."""

from models.reports import ValidationReport


class AmalgamationError(RuntimeError):
    """Base class for failures of an amalgamation strategy."""


class AmalgamationRefused(AmalgamationError):
    """Raised when a strategy is asked for something outside its range (e.g. k > n)."""


class AmalgamationPreconditionError(AmalgamationError):
    """Raised when the input cube is not functorial, not disjoint or has invalid faces.

    Args:
        message (str): Description of the failure.
        report (ValidationReport, optional): The validator's report.
    """

    def __init__(self, message: str, report: ValidationReport | None = None) -> None:
        super().__init__(message)
        self.report = report


class LabelUniverseExhausted(AmalgamationError):
    """Raised when no unused label set is left in {0, ..., L-1}.

    Args:
        message (str): Description of the failed request.
        required (int): A label-universe size that would satisfy the request.
    """

    def __init__(self, message: str, required: int) -> None:
        super().__init__(f"{message}; rerun with a label universe of at least L={required}")
        self.required = required


class LabelCollisionError(AmalgamationError):
    """Raised when two distinct elements of an amalgam end up with the same label set."""
