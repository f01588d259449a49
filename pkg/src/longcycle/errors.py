"""Exception types shared across the package."""


class LongCycleError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(LongCycleError, ValueError):
    """An argument violates a documented precondition."""


class ParseError(InvalidInputError):
    """An instance file could not be turned into a valid graph."""


class SizeRefusal(LongCycleError):
    """A brute-force routine refused an input beyond its size guard."""
