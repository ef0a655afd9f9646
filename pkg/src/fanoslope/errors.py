"""Exception hierarchy shared by every module of the package."""


class FanoSlopeError(Exception):
    """Base class for all package errors."""


class RationalFormatError(FanoSlopeError, ValueError):
    """A string could not be parsed as a canonical rational ``p`` or ``p/q``."""


class ModelDataError(FanoSlopeError):
    """Model data is inconsistent, malformed, or unsuitable for the request."""


class ModelFormatError(ModelDataError):
    """A model file violates the on-disk schema."""


class DegenerateDivisorError(ModelDataError):
    """The zero class was supplied where a nonzero divisor is required."""


class PreconditionError(FanoSlopeError):
    """Inputs fall outside the range where an operation gives a conclusion."""


class InconsistencyError(ModelDataError):
    """Two routes that must agree (or a theorem-level bound) disagree on the data."""
