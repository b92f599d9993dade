"""Exception hierarchy.

Everything raised on purpose by the library derives from :class:`MathError`,
so the batch front end can report a failed task without aborting the job.
"""


class MathError(Exception):
    """Base class for mathematical precondition failures."""


class FieldMismatch(MathError):
    pass


class DivisionByZero(MathError, ZeroDivisionError):
    pass


class ZeroPolynomial(MathError):
    pass


class ConstantInput(MathError):
    pass


class ReducibleFactor(MathError):
    pass


class NotADivisor(MathError):
    pass


class FactorOutsideOrbit(MathError):
    pass


class NotComparable(MathError):
    pass


class InfiniteLength(MathError):
    """Raised when a composition series is requested but some orbit is finite."""


class SpecMismatch(MathError):
    pass


class ZeroUnit(MathError):
    pass


class NoMaximalSubmodule(MathError):
    pass


class NotMaximal(MathError):
    pass


class ReducibleIdeal(MathError):
    pass


class SingularP(MathError):
    pass


class NotCompatible(MathError):
    """The last invariant factor of P does not divide a."""

    def __init__(self, message, last_invariant_factor=None):
        super().__init__(message)
        self.last_invariant_factor = last_invariant_factor


class DimensionMismatch(MathError):
    pass


class NotInvertible(MathError):
    pass


class NotMinimal(MathError):
    def __init__(self, message, shift=None, factor=None):
        super().__init__(message)
        self.shift = shift
        self.factor = factor


class FiniteOrbit(MathError):
    pass


class ParseError(ValueError):
    """Malformed job or JSON payload (maps to CLI exit code 2)."""
