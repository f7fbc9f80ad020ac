"""Exception types shared across the package."""


class FFError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(FFError):
    """The requested modulus is composite."""


class CharacteristicTwoUnsupported(FFError):
    """p = 2 (or any even modulus) is rejected; the closed forms divide by 4."""


class DivisionByZero(FFError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class InstanceTooLarge(FFError):
    """An enumeration would exceed the configured size cap."""


class NotOnVariety(FFError):
    """A point fails its variety equation."""


class WrongVariety(FFError):
    """Operation requires a different kind of surface."""


class MeasureMismatch(FFError):
    """Operands carry incompatible measures or dimensions."""


class BadExponent(FFError):
    """Nonpositive Lebesgue exponent."""


class BadParameter(FFError):
    """Parameter outside the defined range of a character sum."""


class UnsupportedDimension(FFError):
    """A statement valid only in even (or high enough) dimension was asked elsewhere."""


class DegenerateSubspace(FFError):
    """Subspace dimension makes the exponent formula degenerate."""


class PreconditionViolated(FFError):
    """Input violates a documented precondition."""


class NumericalInconsistency(FFError):
    """Two exact routes to the same integer disagreed, or rounding drifted."""


class InequalityViolation(FFError):
    """A constant-1 inequality failed; this is build-breaking."""


class EmptyFunction(FFError):
    """The zero function cannot be normalized or decomposed."""
