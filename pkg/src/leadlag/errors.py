"""Exception hierarchy shared across the package.

Two branches matter for the CLI exit-code contract: DataError maps to
exit code 2, NumericalError to exit code 3.
"""


class LeadLagError(Exception):
    """Base class for all package errors."""

    exit_code = 2


class DataError(LeadLagError):
    """Malformed, insufficient, or inconsistent input data."""

    exit_code = 2


class NumericalError(LeadLagError):
    """A computation cannot produce a meaningful numerical result."""

    exit_code = 3


class SeriesTooShortError(DataError):
    """Series shorter than the operation requires."""


class ZeroVarianceError(NumericalError):
    """Constant input where nonzero variance is required."""


class ZeroNormError(NumericalError):
    """Zero-norm vector where a direction is required."""


class UnknownScheduleError(DataError):
    """Lag-schedule identifier outside the supported set."""


class EmptyOverlapError(DataError):
    """Lag synchronization left no valid index pairs."""


class DegenerateRegressorError(NumericalError):
    """Regressor constant or sample too small for a slope test."""


class ParseError(DataError):
    """Input file could not be parsed."""


class InsufficientDataError(DataError):
    """Fewer complete rows than the operation requires."""


class NonMonotoneTimestampsError(DataError):
    """Panel timestamps are not strictly increasing."""


class NumericalUnderflowError(NumericalError):
    """Partition weights underflowed; enable renormalization."""
