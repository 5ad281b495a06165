"""Exception types shared across the package."""


class ChaospipError(Exception):
    """Base class for every error raised by this package."""


class ParseError(ChaospipError, ValueError):
    """A key string could not be parsed (bad decimal, wrong hex shape)."""


class RangeError(ChaospipError, ValueError):
    """A key parameter lies outside its permitted open interval."""


class FixedPointError(ChaospipError, ValueError):
    """The seed equals the map's nontrivial fixed point 1 - 1/mu."""


class EmptyInput(ChaospipError, ValueError):
    """An operation that needs data received none."""


class DegenerateInput(ChaospipError, ValueError):
    """A statistic is undefined for this input (e.g. constant plane)."""


class DimensionMismatch(ChaospipError, ValueError):
    """Two operands that must share a shape do not."""


class FormatError(ChaospipError, ValueError):
    """A byte stream does not follow the expected file format."""
