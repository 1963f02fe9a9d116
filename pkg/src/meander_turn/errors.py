"""Exception types raised by the meander_turn package."""


class MeanderError(ValueError):
    """Base class for all input and model errors."""


class NonPositiveDefinite(MeanderError):
    """A per-unit-length matrix has m11 - |m12| <= 0 (or m11 <= 0)."""


class DegenerateSource(MeanderError):
    """Source admittance plus line admittance is zero."""


class EmptyWindow(MeanderError):
    """A peak-measurement window contains no samples."""


class ResonancePole(MeanderError):
    """A frequency-domain transfer denominator vanished."""


class WindowTooShort(MeanderError):
    """The oracle time window cannot hold the response without wraparound."""


class ConfigError(MeanderError):
    """Invalid run configuration; ``field`` names the offending key path."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
