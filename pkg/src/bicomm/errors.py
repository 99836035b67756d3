"""Exception hierarchy.

Errors fall in three families, which the CLI maps onto exit codes:

* ``InputError`` -- malformed or mismatched input (exit 2)
* ``CapabilityError`` -- outside the supported computational regime (exit 3)
* ``PreconditionError`` -- a mathematical hypothesis fails (exit 4)
"""


class AlgebraError(Exception):
    """Base class for every error raised by this package."""


class InputError(AlgebraError, ValueError):
    pass


class CapabilityError(AlgebraError):
    pass


class PreconditionError(AlgebraError):
    pass


# field

class ZeroDenominator(InputError, ZeroDivisionError):
    pass


class NonInvertibleModP(InputError, ZeroDivisionError):
    pass


class DivisionByZero(PreconditionError, ZeroDivisionError):
    pass


class FieldMismatch(InputError):
    pass


# poly

class BothZero(InputError):
    pass


class ZeroInput(InputError):
    pass


class DegreeTooLarge(CapabilityError):
    pass


# matrix

class NotSquare(InputError):
    pass


class SizeMismatch(InputError):
    pass


class AmbientMismatch(InputError):
    pass


class Inconsistent(PreconditionError):
    """The right-hand side is not in the column space."""


class Singular(PreconditionError):
    pass


# commalg

class NotInPolynomialAlgebra(PreconditionError):
    pass


class NotEndomorphism(PreconditionError):
    pass


class Infeasible(PreconditionError):
    """An extension problem has no solution."""


# deriv

class DenominatorSingular(PreconditionError):
    pass


class NotPrimary(PreconditionError):
    pass


class TruncationTooShort(PreconditionError):
    def __init__(self, msg, required=None):
        super().__init__(msg)
        self.required = required


class NotCoprime(PreconditionError):
    def __init__(self, msg, gcd=None):
        super().__init__(msg)
        self.gcd = gcd


class NotInBicommutant(PreconditionError):
    pass


# padic

class PrimeMismatch(InputError):
    pass


class NotInRp(PreconditionError):
    pass


class LevelTooHigh(InputError):
    pass
