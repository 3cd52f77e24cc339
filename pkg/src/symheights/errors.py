"""Exception hierarchy shared by every module."""


class HeightError(Exception):
    """Base class for all errors raised by this package."""


class ZeroInput(HeightError, ValueError):
    pass


class OnSupport(HeightError, ValueError):
    """The point lies on the zero locus of a divisor form."""

    def __init__(self, message, form=None):
        super().__init__(message)
        self.form = form


class EqualPoints(HeightError, ValueError):
    pass


class PrecisionExhausted(HeightError, ArithmeticError):
    """A certified numerical decision could not be made below the precision cap."""


class WrongDegree(HeightError, ValueError):
    pass


class BadIndex(HeightError, ValueError):
    pass


class UnsupportedRegime(HeightError):
    """The requested (d, t) regime has no effective description."""


class DegreeTooSmall(HeightError, ValueError):
    pass


class NotSubgeneral(HeightError, ValueError):
    pass


class CoincidentPlane(HeightError, ValueError):
    pass


class BadHypothesis(HeightError, ValueError):
    pass


class DegenerateUnit(HeightError, ValueError):
    pass


class ParseError(HeightError, ValueError):
    pass
