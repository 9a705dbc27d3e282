"""Exception types raised across the package.

Every error is a ``ValueError`` subclass so callers that only care about
"bad input" can catch one thing; the CLI maps all of them to exit code 2.
"""


class FilterError(ValueError):
    """Base class for all design, realization and I/O validation errors."""


class InvalidOrderError(FilterError):
    pass


class InvalidFrequencyError(FilterError):
    pass


class InvalidRippleError(FilterError):
    pass


class InvalidModulusError(FilterError):
    pass


class DivergentIntegralError(InvalidModulusError):
    pass


class InvalidSelectivityError(FilterError):
    pass


class InfeasibleSpecError(FilterError):
    pass


class OutOfBandError(InvalidFrequencyError):
    pass


class InvalidEdgesError(FilterError):
    pass


class MappingSingularityError(FilterError):
    pass


class ConjugateSymmetryError(FilterError):
    pass


class StateShapeError(FilterError):
    pass


class InvalidKindError(FilterError):
    pass


class InvalidSizeError(FilterError):
    pass


class UnsupportedFormatError(FilterError):
    pass


class CorruptFileError(FilterError):
    pass
