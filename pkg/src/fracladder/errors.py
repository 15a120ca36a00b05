"""Exception types raised by the library."""


class FracLadderError(Exception):
    """Base class for all library errors."""


class ValidationError(FracLadderError, ValueError):
    """Invalid input parameters."""


class NumericalError(FracLadderError, ArithmeticError):
    """Base class for numerical diagnostics (poles, singular systems, empty bands)."""


class DivisionNearZero(NumericalError):
    """A continued-fraction denominator fell below the magnitude floor.

    ``level`` is the 1-based position of the term whose denominator vanished.
    """

    def __init__(self, level: int, magnitude: float):
        self.level = level
        self.magnitude = magnitude
        super().__init__(
            f"continued-fraction denominator below floor at level {level} (|d| = {magnitude:.3e})"
        )


class PoleEncountered(DivisionNearZero):
    """Transfer-function recursion hit a pole of the truncated network."""


class SingularAtFrequency(NumericalError):
    def __init__(self, pivot: int, s: complex):
        self.pivot = pivot
        self.s = s
        super().__init__(f"tridiagonal system singular at pivot {pivot} for s = {s!r}")


class NonGeometricLadder(FracLadderError, ValueError):
    def __init__(self, which: str, index: int, ratio: float, first: float):
        self.which = which
        self.index = index
        super().__init__(
            f"{which} ratio at k={index} is {ratio!r}, deviates from first ratio {first!r}"
        )


class DegenerateScaling(NumericalError):
    """sigma * rho == 1, the exponent prediction is undefined."""


class BandTooNarrow(NumericalError):
    pass


class NonFiniteSamples(NumericalError):
    pass


class NoValidBand(NumericalError):
    pass
