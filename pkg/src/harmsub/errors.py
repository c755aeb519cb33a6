"""Exception hierarchy shared by all harmsub modules."""


class HarmsubError(Exception):
    """Base class for every error raised by this package."""


class SeriesFormatError(HarmsubError, ValueError):
    """Malformed series document.  ``position`` is a character offset or None."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class NearZeroDenominatorError(HarmsubError, ZeroDivisionError):
    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class SingularEvaluationError(HarmsubError, ArithmeticError):
    """A map blew up (non-finite value or declared singularity) inside a stencil."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class DegenerateBoundaryError(HarmsubError):
    pass


class HypothesisViolationError(HarmsubError):
    pass


class NoCrossingError(HarmsubError):
    pass


class FlatModulusError(HarmsubError):
    pass


class NormalizationError(HarmsubError, ValueError):
    pass
