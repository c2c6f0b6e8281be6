"""Exact dense matrices and vectors over a :class:`FieldDescriptor`."""

from .errors import DimensionMismatch, FieldMismatch, NotSquare, Singular
from .scalar import Scalar


class Vector:
    """Coordinate vector with respect to the standard basis ``e_1, ..., e_n``.

    ``A @ v`` is the column action and ``v @ A`` the row action.
    """

    __slots__ = ("field", "_e")

    def __init__(self, field, entries):
        self.field = field
        self._e = tuple(field(x).value for x in entries)

    @classmethod
    def _raw(cls, field, e):
        v = cls.__new__(cls)
        v.field = field
        v._e = tuple(e)
        return v

    @classmethod
    def zero(cls, field, n):
        return cls._raw(field, [field.zero] * n)

    @classmethod
    def unit(cls, field, n, k):
        e = [field.zero] * n
        e[k] = field.one
        return cls._raw(field, e)

    @property
    def dim(self):
        return len(self._e)

    @property
    def entries(self):
        return tuple(Scalar(self.field, x) for x in self._e)

    def __getitem__(self, k):
        return Scalar(self.field, self._e[k])

    def __len__(self):
        return len(self._e)

    def is_zero(self):
        return not any(self._e)

    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} and {other.field!r}")
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim}")

    def __add__(self, other):
        self._check(other)
        F = self.field
        return Vector._raw(F, [F.reduce(a + b) for a, b in zip(self._e, other._e)])

    def __sub__(self, other):
        self._check(other)
        F = self.field
        return Vector._raw(F, [F.reduce(a - b) for a, b in zip(self._e, other._e)])

    def scale(self, raw):
        F = self.field
        return Vector._raw(F, [F.reduce(a * raw) for a in self._e])

    def __matmul__(self, A):
        """Row action ``v A``."""
        if not isinstance(A, DenseMatrix):
            return NotImplemented
        if A.field != self.field:
            raise FieldMismatch(f"{self.field!r} and {A.field!r}")
        if A.rows != self.dim:
            raise DimensionMismatch(f"1x{self.dim} times {A.rows}x{A.cols}")
        F = self.field
        out = [0] * A.cols
        for a, row in zip(self._e, A._r):
            if a:
                for j, b in enumerate(row):
                    out[j] += a * b
        return Vector._raw(F, [F.reduce(x) for x in out])

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.field == other.field and self._e == other._e

    def __hash__(self):
        return hash((self.field, self._e))

    def __repr__(self):
        return f"Vector({self.field!r}, [{', '.join(self.field.format_raw(x) for x in self._e)}])"


class DenseMatrix:
    __slots__ = ("field", "rows", "cols", "_r")

    def __init__(self, field, rows):
        """Build from a sequence of rows of ints, Fractions, strings or Scalars."""
        r = tuple(tuple(field(x).value for x in row) for row in rows)
        if not r or not r[0]:
            raise DimensionMismatch("matrices must have at least one row and column")
        if any(len(row) != len(r[0]) for row in r):
            raise DimensionMismatch("ragged rows")
        self.field = field
        self.rows = len(r)
        self.cols = len(r[0])
        self._r = r

    @classmethod
    def _raw(cls, field, rows):
        m = cls.__new__(cls)
        m.field = field
        m._r = tuple(tuple(row) for row in rows)
        m.rows = len(m._r)
        m.cols = len(m._r[0]) if m._r else 0
        return m

    @classmethod
    def zero(cls, field, rows, cols=None):
        cols = rows if cols is None else cols
        return cls._raw(field, [[field.zero] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        return cls._raw(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, field, n, c):
        c = field(c).value
        return cls._raw(field, [[c if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns):
        F = columns[0].field
        return cls._raw(F, [[v._e[i] for v in columns] for i in range(columns[0].dim)])

    @classmethod
    def from_vector_rows(cls, vectors):
        return cls._raw(vectors[0].field, [v._e for v in vectors])

    @classmethod
    def block_diag(cls, blocks):
        F = blocks[0].field
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[F.zero] * m for _ in range(n)]
        i0 = j0 = 0
        for b in blocks:
            for i, row in enumerate(b._r):
                out[i0 + i][j0:j0 + b.cols] = row
            i0 += b.rows
            j0 += b.cols
        return cls._raw(F, out)

    # -- inspection ----------------------------------------------------------

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def entries(self):
        """Row-major tuple of Scalars."""
        return tuple(Scalar(self.field, x) for row in self._r for x in row)

    def to_lists(self):
        return [[Scalar(self.field, x) for x in row] for row in self._r]

    def __getitem__(self, ij):
        i, j = ij
        return Scalar(self.field, self._r[i][j])

    def row(self, i):
        return Vector._raw(self.field, self._r[i])

    def column(self, j):
        return Vector._raw(self.field, [row[j] for row in self._r])

    def is_square(self):
        return self.rows == self.cols

    def require_square(self):
        if self.rows != self.cols:
            raise NotSquare(f"{self.rows}x{self.cols} matrix is not square")
        return self.rows

    def is_zero(self):
        return not any(any(row) for row in self._r)

    def transpose(self):
        return DenseMatrix._raw(self.field, list(zip(*self._r)))

    def replace(self, i, j, value):
        r = [list(row) for row in self._r]
        r[i][j] = self.field(value).value
        return DenseMatrix._raw(self.field, r)

    def with_column(self, j, v):
        r = [list(row) for row in self._r]
        for i in range(self.rows):
            r[i][j] = v._e[i]
        return DenseMatrix._raw(self.field, r)

    # -- arithmetic ----------------------------------------------------------

    def _check_same(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} and {other.field!r}")
        if other.shape != self.shape:
            raise DimensionMismatch(f"{self.shape} and {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        F = self.field
        return DenseMatrix._raw(F, [[F.reduce(a + b) for a, b in zip(r, s)] for r, s in zip(self._r, other._r)])

    def __sub__(self, other):
        self._check_same(other)
        F = self.field
        return DenseMatrix._raw(F, [[F.reduce(a - b) for a, b in zip(r, s)] for r, s in zip(self._r, other._r)])

    def __neg__(self):
        F = self.field
        return DenseMatrix._raw(F, [[F.reduce(-a) for a in r] for r in self._r])

    def scale(self, c):
        F = self.field
        c = F(c).value
        return DenseMatrix._raw(F, [[F.reduce(a * c) for a in r] for r in self._r])

    def add_diagonal(self, raw):
        """``self + raw * I`` for a raw field value."""
        F = self.field
        r = [list(row) for row in self._r]
        for i in range(min(self.rows, self.cols)):
            r[i][i] = F.reduce(r[i][i] + raw)
        return DenseMatrix._raw(F, r)

    def __matmul__(self, other):
        if isinstance(other, Vector):
            return self.apply(other)
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} and {other.field!r}")
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} times {other.rows}x{other.cols}")
        F = self.field
        cols = list(zip(*other._r))
        out = []
        for row in self._r:
            out.append([F.reduce(sum(a * b for a, b in zip(row, col) if a)) for col in cols])
        return DenseMatrix._raw(F, out)

    def apply(self, v):
        """Column action ``A v``."""
        if v.field != self.field:
            raise FieldMismatch(f"{self.field!r} and {v.field!r}")
        if v.dim != self.cols:
            raise DimensionMismatch(f"{self.rows}x{self.cols} applied to dimension {v.dim}")
        F = self.field
        return Vector._raw(F, [F.reduce(sum(a * b for a, b in zip(row, v._e))) for row in self._r])

    def __pow__(self, k):
        n = self.require_square()
        result = DenseMatrix.identity(self.field, n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.field == other.field and self._r == other._r

    def __hash__(self):
        return hash((self.field, self._r))

    # -- elimination -----------------------------------------------------------

    def det(self):
        """Determinant by Gaussian elimination, tracking the sign of row swaps."""
        n = self.require_square()
        F = self.field
        a = [list(row) for row in self._r]
        det = F.one
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                return Scalar(F, F.zero)
            if p != k:
                a[k], a[p] = a[p], a[k]
                det = F.reduce(-det)
            pivot = a[k][k]
            det = F.reduce(det * pivot)
            inv = F.inv(pivot)
            for i in range(k + 1, n):
                if a[i][k]:
                    f = F.reduce(a[i][k] * inv)
                    a[i] = [F.reduce(x - f * y) for x, y in zip(a[i], a[k])]
        return Scalar(F, det)

    def inverse(self):
        """Gauss-Jordan inverse; pivots on the first nonzero entry of each column."""
        n = self.require_square()
        F = self.field
        a = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(self._r)]
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                raise Singular("matrix is singular")
            a[k], a[p] = a[p], a[k]
            inv = F.inv(a[k][k])
            a[k] = [F.reduce(x * inv) for x in a[k]]
            for i in range(n):
                if i != k and a[i][k]:
                    f = a[i][k]
                    a[i] = [F.reduce(x - f * y) for x, y in zip(a[i], a[k])]
        return DenseMatrix._raw(F, [row[n:] for row in a])

    def rank(self):
        F = self.field
        a = [list(row) for row in self._r]
        r = 0
        for k in range(self.cols):
            p = next((i for i in range(r, self.rows) if a[i][k]), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            inv = F.inv(a[r][k])
            for i in range(r + 1, self.rows):
                if a[i][k]:
                    f = F.reduce(a[i][k] * inv)
                    a[i] = [F.reduce(x - f * y) for x, y in zip(a[i], a[r])]
            r += 1
        return r

    def is_invertible(self):
        return self.is_square() and bool(self.det())

    # -- rendering -------------------------------------------------------------

    def format_grid(self):
        cells = [[self.field.format_raw(x) for x in row] for row in self._r]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)

    def to_json(self):
        return [[self.field.format_raw(x) for x in row] for row in self._r]

    @classmethod
    def from_json(cls, field, rows):
        return cls._raw(field, [[field.parse_raw(str(x)) for x in row] for row in rows])

    def __repr__(self):
        return f"DenseMatrix({self.field!r}, {self.to_json()})"

    def __str__(self):
        return self.format_grid()


def mat_mul(A, B):
    return A @ B


def mat_apply(A, v):
    return A.apply(v)


def mat_invert(A):
    return A.inverse()


def mat_det(A):
    return A.det()

