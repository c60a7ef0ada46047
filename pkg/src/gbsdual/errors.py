"""Exception hierarchy shared by every module."""


class GbsDualError(Exception):
    """Base class for all errors raised by gbsdual."""


class NotSymmetricError(GbsDualError, ValueError):
    pass


class DimensionError(GbsDualError, ValueError):
    pass


class GraphFormatError(GbsDualError, ValueError):
    """Malformed graph input. ``offset`` is the byte offset of the problem, if known."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class SizeLimitError(GbsDualError):
    """The input is larger than the operation's resource envelope allows."""


class BudgetExceededError(GbsDualError):
    """A configurable work budget was exhausted before the computation finished."""


class InconsistentSystemError(GbsDualError, ArithmeticError):
    pass


class RankDeficientError(GbsDualError, ArithmeticError):
    pass


class DivergentSeriesError(GbsDualError, ValueError):
    pass


class InvalidEncodingError(GbsDualError, ValueError):
    pass


class NonUniformDisplacementError(GbsDualError, ValueError):
    pass


class InfeasibleError(GbsDualError, ValueError):
    pass
