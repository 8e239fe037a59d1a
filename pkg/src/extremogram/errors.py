"""Exception and warning classes used throughout the package."""


class ExtremogramError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(ExtremogramError, ValueError):
    pass


class RegionSyntaxError(ExtremogramError, ValueError):
    """Malformed region text. ``position`` is the 0-based character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class RegionSemanticError(ExtremogramError, ValueError):
    """Well-formed region text that describes an invalid set."""


class DimensionMismatch(ExtremogramError, ValueError):
    pass


class NotBoundedAwayFromZero(ExtremogramError, ValueError):
    """The region could not be shown to exclude a neighbourhood of the origin."""


class LagTooLarge(ExtremogramError, ValueError):
    pass


class NoExceedances(ExtremogramError):
    """No observation falls in the conditioning set; the threshold is too high."""


class ZeroDenominator(ExtremogramError, ZeroDivisionError):
    pass


class TooFewBlocks(ExtremogramError, ValueError):
    pass


class TruncationTooLarge(ExtremogramError, ValueError):
    pass


class NonCausal(ExtremogramError, ValueError):
    pass


class NonStationary(ExtremogramError, ValueError):
    pass


class NoRoot(ExtremogramError):
    pass


class NotConverged(ExtremogramError):
    pass


class DivergentCoefficients(ExtremogramError, ValueError):
    pass


class UnsupportedRegion(ExtremogramError, ValueError):
    pass


class IngestError(ExtremogramError, OSError):
    pass


class CsvParseError(ExtremogramError, ValueError):
    def __init__(self, message, row):
        super().__init__(f"row {row}: {message}")
        self.row = row


class EmptyFile(ExtremogramError, ValueError):
    pass


class DegenerateSeriesWarning(UserWarning):
    """All norms are equal, so the threshold may have no exceedances above it."""


class TuningWarning(UserWarning):
    """A tuning parameter lies outside its recommended range."""
