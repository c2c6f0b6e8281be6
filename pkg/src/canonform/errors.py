"""Exception hierarchy shared by every module of the package."""


class CanonError(Exception):
    """Base class for all errors raised by canonform."""


class FieldMismatch(CanonError, TypeError):
    pass


class DivisionByZero(CanonError, ZeroDivisionError):
    pass


class NotPrime(CanonError, ValueError):
    pass


class ParseError(CanonError, ValueError):
    """Malformed input text; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class DimensionMismatch(CanonError, ValueError):
    pass


class DimensionError(DimensionMismatch):
    """Wrong number of entries in a matrix file."""


class NotSquare(DimensionMismatch):
    pass


class Singular(CanonError, ArithmeticError):
    pass


class NotMonic(CanonError, ValueError):
    pass


class NonpositiveSize(CanonError, ValueError):
    pass


class CharPolyDoesNotSplit(CanonError):
    """An invariant factor has an irreducible factor of degree >= 2 over the field.

    ``remainder`` is the monic part left over after all linear factors were
    divided out.
    """

    def __init__(self, remainder):
        self.remainder = remainder
        super().__init__(f"characteristic polynomial does not split; remainder {remainder}")


class CertificateInvalid(CanonError, AssertionError):
    pass
