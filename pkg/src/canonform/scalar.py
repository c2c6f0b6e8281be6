"""Exact scalars over the rationals or a prime field GF(p).

Every value is tagged with a :class:`FieldDescriptor`.  Internally a field
works on *raw* values (``Fraction`` over Q, ``int`` in ``[0, p)`` over GF(p));
the polynomial and matrix layers operate on raw values directly and only wrap
them in :class:`Scalar` at the public surface.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, NotPrime, ParseError

RATIONAL = "rational"
PRIME = "prime"

#: Upper bound (exclusive) on GF(p) moduli; root search is exhaustive over GF(p).
MAX_MODULUS = 1 << 16

_SCALAR_RE = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str
    modulus: int = None

    def __post_init__(self):
        if self.kind == RATIONAL:
            if self.modulus is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == PRIME:
            if not isinstance(self.modulus, int) or not is_prime(self.modulus):
                raise NotPrime(f"modulus {self.modulus!r} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls):
        return cls(RATIONAL)

    @classmethod
    def gf(cls, p, max_modulus=MAX_MODULUS):
        if not isinstance(p, int) or p >= max_modulus:
            raise ValueError(f"GF(p) modulus must be an integer below {max_modulus}")
        return cls(PRIME, p)

    @property
    def is_rational(self):
        return self.kind == RATIONAL

    def __str__(self):
        return "rational" if self.is_rational else f"gf {self.modulus}"

    def __repr__(self):
        return "QQ" if self.is_rational else f"GF({self.modulus})"

    # -- raw-value layer -------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.is_rational else 0

    @property
    def one(self):
        return Fraction(1) if self.is_rational else 1

    def reduce(self, x):
        """Canonical raw value of an int/Fraction result."""
        if self.is_rational:
            return x if type(x) is Fraction else Fraction(x)
        if type(x) is Fraction:
            if x.denominator % self.modulus == 0:
                raise DivisionByZero(f"denominator vanishes mod {self.modulus}")
            return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
        return x % self.modulus

    def inv(self, x):
        if not x:
            raise DivisionByZero("inverse of zero")
        if self.is_rational:
            return 1 / x
        return pow(x, -1, self.modulus)

    def format_raw(self, x):
        if self.is_rational and x.denominator != 1:
            return f"{x.numerator}/{x.denominator}"
        return str(int(x))

    def parse_raw(self, text):
        m = _SCALAR_RE.match(text.strip())
        if not m:
            raise ParseError(f"malformed scalar {text!r}")
        sign, num, den = m.groups()
        num = int(num)
        if sign == "-":
            num = -num
        den = int(den) if den is not None else 1
        if den == 0:
            raise DivisionByZero(f"zero denominator in {text!r}")
        if self.is_rational:
            return Fraction(num, den)
        if den % self.modulus == 0:
            raise DivisionByZero(f"denominator of {text!r} vanishes mod {self.modulus}")
        return num * pow(den, -1, self.modulus) % self.modulus

    def sort_key(self, x):
        """Canonical order: numeric over Q, representative over GF(p)."""
        return x

    # -- Scalar construction ---------------------------------------------

    def __call__(self, value):
        """Coerce an int, Fraction, string or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field!r} scalar used in {self!r}")
            return value
        if isinstance(value, str):
            return Scalar(self, self.parse_raw(value))
        return Scalar(self, self.reduce(value))

    def elements(self):
        """All elements of a prime field, in canonical order."""
        if self.is_rational:
            raise ValueError("the rational field is infinite")
        return [Scalar(self, i) for i in range(self.modulus)]


QQ = FieldDescriptor.rationals()


def GF(p):
    return FieldDescriptor.gf(p)


class Scalar:
    """Immutable field element."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.reduce(other)
        return NotImplemented

    def _wrap(self, raw):
        return Scalar(self.field, self.field.reduce(raw))

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.value * self.field.inv(o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(o * self.field.inv(self.value))

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return self._wrap(self.value**k)

    def inverse(self):
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.reduce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __lt__(self, other):
        # canonical order only; not a field ordering over GF(p)
        return self.field.sort_key(self.value) < self.field.sort_key(self._other(other))

    def __str__(self):
        return self.field.format_raw(self.value)

    def __repr__(self):
        return f"{self.field!r}({self})"


def scalar_arith(op, a, b):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown scalar operation {op!r}")


def scalar_invert(a):
    return a.inverse()


def scalar_parse(text, field):
    return field(str(text))


def scalar_format(a):
    return str(a)
