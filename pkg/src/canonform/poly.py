"""Dense univariate polynomials in ``l`` over Q or GF(p).

Coefficients are stored ascending (``coeffs[k]`` multiplies ``l**k``) with no
trailing zeros; the zero polynomial has no coefficients.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

from .errors import DivisionByZero, FieldMismatch, NotMonic
from .matrix import DenseMatrix
from .scalar import Scalar

VAR = "l"


class Polynomial:
    __slots__ = ("field", "_c")

    def __init__(self, field, coeffs=()):
        c = [field(x).value for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.field = field
        self._c = tuple(c)

    @classmethod
    def _raw(cls, field, c):
        # c: list of canonical raw values; stripped in place
        while c and not c[-1]:
            c.pop()
        p = cls.__new__(cls)
        p.field = field
        p._c = tuple(c)
        return p

    @classmethod
    def zero(cls, field):
        return cls._raw(field, [])

    @classmethod
    def one(cls, field):
        return cls._raw(field, [field.one])

    @classmethod
    def constant(cls, field, c):
        return cls._raw(field, [field(c).value])

    @classmethod
    def lam(cls, field):
        """The indeterminate ``l``."""
        return cls._raw(field, [field.zero, field.one])

    @classmethod
    def linear(cls, root):
        """``l - root``."""
        f = root.field
        return cls._raw(f, [f.reduce(-root.value), f.one])

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self):
        return tuple(Scalar(self.field, x) for x in self._c)

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self):
        return not self._c

    def is_constant(self):
        return len(self._c) <= 1

    def is_one(self):
        return len(self._c) == 1 and self._c[0] == 1

    def lc(self):
        if not self._c:
            raise ValueError("zero polynomial has no leading coefficient")
        return Scalar(self.field, self._c[-1])

    def coeff(self, k):
        return Scalar(self.field, self._c[k] if k < len(self._c) else self.field.zero)

    def is_monic(self):
        return bool(self._c) and self._c[-1] == 1

    def monic(self):
        if not self._c:
            return self
        if self._c[-1] == 1:
            return self
        return self.scale(self.field.inv(self._c[-1]))

    def scale(self, raw):
        F = self.field
        return Polynomial._raw(F, [F.reduce(x * raw) for x in self._c])

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} and {other.field!r}")
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return Polynomial.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        F = self.field
        c = [F.reduce(x + y) for x, y in zip(a, b)]
        c.extend(a[len(b):])
        return Polynomial._raw(F, c)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial._raw(F, [F.reduce(-x) for x in self._c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._c, o._c
        if not a or not b:
            return Polynomial.zero(self.field)
        F = self.field
        c = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        return Polynomial._raw(F, [F.reduce(x) for x in c])

    __rmul__ = __mul__

    def __pow__(self, k):
        result = Polynomial.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        g = self._coerce(other)
        if g is NotImplemented:
            return g
        if not g._c:
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        r = list(self._c)
        dg = len(g._c) - 1
        if len(r) <= dg:
            return Polynomial.zero(F), self
        inv_lc = F.inv(g._c[-1])
        q = [F.zero] * (len(r) - dg)
        gc = g._c
        for k in range(len(r) - 1, dg - 1, -1):
            t = r[k]
            if not t:
                continue
            t = F.reduce(t * inv_lc)
            q[k - dg] = t
            for j in range(dg + 1):
                r[k - dg + j] = F.reduce(r[k - dg + j] - t * gc[j])
        return Polynomial._raw(F, q), Polynomial._raw(F, r[:dg])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other):
        """True if ``self`` divides ``other`` (zero divides only zero)."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self._c == other._c
        if isinstance(other, (int, Fraction, Scalar)):
            try:
                return self == Polynomial.constant(self.field, other)
            except FieldMismatch:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self._c))

    def __call__(self, x):
        """Evaluate at a scalar (Horner)."""
        F = self.field
        x = F(x).value
        acc = F.zero
        for c in reversed(self._c):
            acc = F.reduce(acc * x + c)
        return Scalar(F, acc)

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        if not self._c:
            return "0"
        F = self.field
        parts = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if not c:
                continue
            neg = F.is_rational and c < 0
            mag = -c if neg else c
            if k == 0:
                body = F.format_raw(mag)
            else:
                mono = VAR if k == 1 else f"{VAR}^{k}"
                body = mono if mag == 1 else f"{F.format_raw(mag)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self.field!r}, {self})"

    def to_json(self):
        return [self.field.format_raw(c) for c in self._c]

    @classmethod
    def from_json(cls, field, items):
        return cls._raw(field, [field.parse_raw(str(s)) for s in items])


def poly_arith(op, f, g):
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_divrem(f, g):
    return divmod(f, g)


def gcd_ext(f, g):
    """Extended Euclid: return ``(d, s, t)`` with ``d = s*f + t*g`` monic.

    Raises ``ValueError`` when both inputs are zero.
    """
    if f.field != g.field:
        raise FieldMismatch(f"{f.field!r} and {g.field!r}")
    F = f.field
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    r0, r1 = f, g
    s0, s1 = Polynomial.one(F), Polynomial.zero(F)
    t0, t1 = Polynomial.zero(F), Polynomial.one(F)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    u = F.inv(r0._c[-1])
    return r0.scale(u), s0.scale(u), t0.scale(u)


def poly_gcd(f, g):
    return gcd_ext(f, g)[0]


def eval_scalar(f, x):
    return f(x)


def eval_matrix(f, A):
    """Evaluate ``f`` at the square matrix ``A`` by Horner's rule."""
    if f.field != A.field:
        raise FieldMismatch(f"{f.field!r} and {A.field!r}")
    n = A.require_square()
    acc = DenseMatrix.zero(A.field, n, n)
    for c in reversed(f._c):
        acc = acc @ A
        acc = acc.add_diagonal(c)
    return acc


@dataclass(frozen=True)
class LinearSplit:
    """``f = lc(f) * prod((l - root)**mult) * remainder`` with a monic remainder."""

    roots: tuple
    remainder: Polynomial

    @property
    def splits(self):
        return self.remainder.is_one()

    def factors(self):
        """The prime powers ``(l - root)**mult`` in root order."""
        return [Polynomial.linear(r) ** m for r, m in self.roots]


def _divisors(n):
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _candidate_roots(f):
    F = f.field
    if not F.is_rational:
        return range(F.modulus)
    den = lcm(*(c.denominator for c in f._c))
    ints = [int(c * den) for c in f._c]
    content = gcd(*ints)
    ints = [x // content for x in ints]
    # strip the l**k factor so the constant term is nonzero
    k = 0
    while ints[k] == 0:
        k += 1
    cands = {Fraction(0)} if k else set()
    for p in _divisors(ints[k]):
        for q in _divisors(ints[-1]):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    return sorted(cands)


def linear_split(f):
    """Divide out every linear factor of ``f`` over its field.

    Candidates come from the rational root theorem over Q and from exhaustive
    search over GF(p).  Multiplicities are found by repeated exact division.
    """
    if f.is_zero():
        raise ValueError("cannot split the zero polynomial")
    F = f.field
    rest = f.monic()
    roots = []
    if rest.degree >= 1:
        for raw in _candidate_roots(rest):
            if rest.degree < 1:
                break
            r = Scalar(F, F.reduce(raw))
            lin = Polynomial.linear(r)
            mult = 0
            while rest.degree >= 1:
                q, rem = divmod(rest, lin)
                if not rem.is_zero():
                    break
                rest = q
                mult += 1
            if mult:
                roots.append((r, mult))
    roots.sort(key=lambda rm: F.sort_key(rm[0].value))
    return LinearSplit(tuple(roots), rest)


def horner_sequence(g):
    """Horner polynomials ``(q_{n-1}, ..., q_0)`` of a monic ``g`` of degree n.

    Writing ``g = l**n - a_{n-1} l**(n-1) - ... - a_0``, the sequence starts at
    ``q_{n-1} = 1`` and continues with ``q_{j-1} = l*q_j - a_j``, so that
    ``l*q_0 - g = a_0``.
    """
    if not g.is_monic() or g.degree < 1:
        raise NotMonic(f"{g} is not monic of positive degree")
    F = g.field
    n = g.degree
    lam = Polynomial.lam(F)
    # a_j = -coeff_j(g)
    a = [F.reduce(-c) for c in g._c[:n]]
    seq = [Polynomial.one(F)]
    for j in range(n - 1, 0, -1):
        seq.append(lam * seq[-1] - Polynomial._raw(F, [a[j]]))
    return tuple(seq)
