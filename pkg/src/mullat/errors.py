"""Exception hierarchy shared by every subpackage.

The CLI maps any :class:`MullatError` to exit status 1.
"""


class MullatError(Exception):
    """Base class for domain errors."""


class DimensionMismatch(MullatError, ValueError):
    pass


class CharacteristicMismatch(MullatError, ValueError):
    pass


class NotInRing(MullatError, ValueError):
    """A rational that is not an element of Z (p = 0) or Z[1/p]."""


class NotAMember(MullatError, ValueError):
    pass


class NotASubmodule(MullatError, ValueError):
    pass


class NotPure(MullatError, ValueError):
    pass


class QuotientTorsion(MullatError, ValueError):
    pass


class DependentInput(MullatError, ValueError):
    pass


class ReducibleFactor(MullatError, ValueError):
    pass


class ParseError(MullatError, ValueError):
    pass


class ZeroInput(MullatError, ValueError):
    pass


class NotInValuationRing(MullatError, ValueError):
    pass


class PrecisionError(MullatError, ArithmeticError):
    pass


class InseparableStep(MullatError, ArithmeticError):
    pass


class CoefficientFieldNotClosed(MullatError, ArithmeticError):
    """Raised when a root needs a coefficient field beyond the supported degree.

    ``minpoly`` carries the minimal polynomial (low-to-high coefficients over
    the prime field) of the field that would have been required.
    """

    def __init__(self, message, minpoly=None):
        super().__init__(message)
        self.minpoly = minpoly


class PlaceUndefined(MullatError, ValueError):
    pass


class IdentityFailure(MullatError, ValueError):
    pass


class ScenarioError(MullatError, ValueError):
    pass
