"""Exception hierarchy.

Every precondition failure raises a subclass of :class:`IdealForgeError`;
the CLI maps those to exit status 1.  :class:`InvariantViolation` marks a
bug in the library itself (exit status 2).
"""


class IdealForgeError(ValueError):
    """Base class for rejected inputs."""


class InvariantViolation(AssertionError):
    """An internal identity that must always hold did not."""


class ParseError(IdealForgeError):
    pass


class RankDeficient(IdealForgeError):
    pass


class DimensionMismatch(IdealForgeError):
    pass


class BadModulus(IdealForgeError):
    pass


class NotMonic(IdealForgeError):
    pass


class NotPrime(IdealForgeError):
    pass


class DivisionByZeroPoly(IdealForgeError, ZeroDivisionError):
    pass


class ModulusMismatch(IdealForgeError):
    pass


class DegreeTooSmall(IdealForgeError):
    pass


class DegenerateField(IdealForgeError):
    pass


class FieldMismatch(IdealForgeError):
    pass


class ZeroElement(IdealForgeError):
    pass


class NotARoot(IdealForgeError):
    pass


class DegreeNotOne(IdealForgeError):
    pass


class SPowerTooSmall(IdealForgeError):
    pass


class NotOddPrime(IdealForgeError):
    pass


class SamePrime(IdealForgeError):
    pass


class DegenerateSum(IdealForgeError):
    pass


class ResultNotRational(InvariantViolation):
    pass
