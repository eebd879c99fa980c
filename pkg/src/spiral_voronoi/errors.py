"""Exception types raised across the package."""


class SpiralVoronoiError(Exception):
    """Base class for all package errors."""


class ParameterError(SpiralVoronoiError, ValueError):
    pass


class DuplicatePointError(SpiralVoronoiError, ValueError):
    pass


class DegenerateInputError(SpiralVoronoiError, ValueError):
    """Fewer than three seeds, or all seeds collinear."""


class EmptyStatisticsError(SpiralVoronoiError, ValueError):
    """The cell filter policy selected no cells."""


class InsufficientDataError(SpiralVoronoiError, ValueError):
    """Too few qualifying edge-count classes for a fit.

    The per-class means that could be computed are kept on ``means`` so
    callers can still report them.
    """

    def __init__(self, message, means=None):
        super().__init__(message)
        self.means = dict(means or {})


class ParseError(SpiralVoronoiError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InternalError(SpiralVoronoiError, RuntimeError):
    """A condition that valid input should never trigger."""


class SweepError(SpiralVoronoiError):
    """A sweep entry failed; ``control`` is the value being evaluated."""

    def __init__(self, control, cause):
        super().__init__(f"sweep failed at control value {control!r}: {cause}")
        self.control = control
        self.cause = cause
