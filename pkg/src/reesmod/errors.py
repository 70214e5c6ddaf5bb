"""Exception hierarchy shared across the library."""


class ReesmodError(Exception):
    """Base class for all library errors."""


class RingMismatchError(ReesmodError):
    """Operands live in different polynomial rings."""


class OrderMismatchError(ReesmodError):
    """Canonical comparison attempted across different monomial orders."""


class ExponentOverflowError(ReesmodError):
    """An exponent exceeded the machine-word bound."""


class CoefficientError(ReesmodError):
    """A value cannot be interpreted in the requested coefficient field."""


class NotInIdealError(ReesmodError):
    """A membership lift was requested for an element outside the ideal."""


class CentreError(ReesmodError):
    """Invalid centre data: zero divisor element or element not in the ideal."""


class PresentationError(ReesmodError):
    """The two presentations of a modification ring failed to agree."""


class ChartDataError(ReesmodError):
    """Malformed atlas, divisor or sheaf data (structural, pre-validation)."""


class GlobalModificationError(ReesmodError):
    """Validation of atlas/divisor/sheaf data failed; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ComputationCancelled(ReesmodError):
    """A cooperative cancellation signal interrupted a long computation."""
