"""Matrices over F[l]: the characteristic matrix and its Smith normal form.

``smith_normal_form`` returns unimodular ``P``, ``Q`` with ``P (lE - A) Q = D``
together with ``Qinv = Q**-1``, which is accumulated operation by operation
instead of being recomputed by inversion.
"""

from dataclasses import dataclass

from .errors import CharPolyDoesNotSplit, DimensionMismatch, FieldMismatch, NotSquare
from .poly import Polynomial, gcd_ext, linear_split

INVARIANT_FACTORS = "invariant_factors"
ELEMENTARY_DIVISORS = "elementary_divisors"


class PolyMatrix:
    __slots__ = ("field", "rows", "cols", "_m")

    def __init__(self, field, rows):
        m = tuple(tuple(_as_poly(field, x) for x in row) for row in rows)
        if any(len(row) != len(m[0]) for row in m):
            raise DimensionMismatch("ragged rows")
        self.field = field
        self._m = m
        self.rows = len(m)
        self.cols = len(m[0]) if m else 0

    @classmethod
    def _raw(cls, field, rows):
        pm = cls.__new__(cls)
        pm.field = field
        pm._m = tuple(tuple(row) for row in rows)
        pm.rows = len(pm._m)
        pm.cols = len(pm._m[0]) if pm._m else 0
        return pm

    @classmethod
    def identity(cls, field, n):
        one, zero = Polynomial.one(field), Polynomial.zero(field)
        return cls._raw(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, polys):
        field = polys[0].field
        zero = Polynomial.zero(field)
        n = len(polys)
        return cls._raw(field, [[polys[i] if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self._m[i][j]

    def to_lists(self):
        return [list(row) for row in self._m]

    @property
    def shape(self):
        return self.rows, self.cols

    def require_square(self):
        if self.rows != self.cols:
            raise NotSquare(f"{self.rows}x{self.cols} polynomial matrix is not square")
        return self.rows

    def is_diagonal(self):
        return all(self._m[i][j].is_zero() for i in range(self.rows) for j in range(self.cols) if i != j)

    def diag(self):
        return tuple(self._m[i][i] for i in range(min(self.rows, self.cols)))

    def max_degree(self):
        return max(p.degree for row in self._m for p in row)

    def __matmul__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} and {other.field!r}")
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} times {other.shape}")
        zero = Polynomial.zero(self.field)
        cols = list(zip(*other._m))
        out = []
        for row in self._m:
            out_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if a._c and b._c:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return PolyMatrix._raw(self.field, out)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.field == other.field and self._m == other._m

    def __hash__(self):
        return hash((self.field, self._m))

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination over F[l]."""
        n = self.require_square()
        a = [list(row) for row in self._m]
        sign = 1
        prev = Polynomial.one(self.field)
        for k in range(n - 1):
            if a[k][k].is_zero():
                p = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
                if p is None:
                    return Polynomial.zero(self.field)
                a[k], a[p] = a[p], a[k]
                sign = -sign
            akk = a[k][k]
            for i in range(k + 1, n):
                aik = a[i][k]
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * akk - aik * a[k][j]).exact_div(prev)
            prev = akk
        d = a[n - 1][n - 1]
        return d if sign > 0 else -d

    def to_json(self):
        return [[p.to_json() for p in row] for row in self._m]

    @classmethod
    def from_json(cls, field, rows):
        return cls._raw(field, [[Polynomial.from_json(field, p) for p in row] for row in rows])

    def __repr__(self):
        return f"PolyMatrix({self.field!r}, {[[str(p) for p in row] for row in self._m]})"


def _as_poly(field, x):
    if isinstance(x, Polynomial):
        if x.field != field:
            raise FieldMismatch(f"{x.field!r} entry in {field!r} matrix")
        return x
    return Polynomial.constant(field, x)


def char_matrix(A):
    """The characteristic matrix ``lE - A``."""
    n = A.require_square()
    F = A.field
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            c = F.reduce(-A._r[i][j])
            row.append(Polynomial._raw(F, [c, F.one] if i == j else [c]))
        rows.append(row)
    return PolyMatrix._raw(F, rows)


def is_unimodular(M):
    M.require_square()
    d = M.det()
    return d.degree == 0


@dataclass(frozen=True)
class DiagonalShape:
    mode: str
    entries: tuple  # of (Polynomial, position)


@dataclass(frozen=True)
class SmithDecomposition:
    """``P @ M @ Q == D`` with ``Q @ Qinv == I`` and ``D`` diagonal."""

    D: PolyMatrix
    P: PolyMatrix
    Q: PolyMatrix
    Qinv: PolyMatrix
    diag: tuple
    mode: str = INVARIANT_FACTORS

    @property
    def field(self):
        return self.D.field

    def nontrivial(self):
        """``(position, entry)`` pairs for every diagonal entry of positive degree."""
        return [(i, d) for i, d in enumerate(self.diag) if d.degree >= 1]

    def shape(self):
        return DiagonalShape(self.mode, tuple((d, i) for i, d in self.nontrivial()))


class _Work:
    """Mutable state of an elimination: the matrix, ``P``, ``Q`` and ``Qinv``."""

    def __init__(self, M, P, Q, Qinv):
        self.F = M.field
        self.M = [list(r) for r in M._m]
        self.P = [list(r) for r in P._m]
        self.Q = [list(r) for r in Q._m]
        self.Qinv = [list(r) for r in Qinv._m]

    def swap_rows(self, i, j):
        if i != j:
            self.M[i], self.M[j] = self.M[j], self.M[i]
            self.P[i], self.P[j] = self.P[j], self.P[i]

    def swap_cols(self, i, j):
        if i != j:
            for row in self.M:
                row[i], row[j] = row[j], row[i]
            for row in self.Q:
                row[i], row[j] = row[j], row[i]
            self.Qinv[i], self.Qinv[j] = self.Qinv[j], self.Qinv[i]

    def add_row(self, dst, src, f):
        """row[dst] += f * row[src]"""
        for mat in (self.M, self.P):
            s, d = mat[src], mat[dst]
            for k in range(len(d)):
                if s[k]._c:
                    d[k] = d[k] + f * s[k]

    def add_col(self, dst, src, f):
        """col[dst] += f * col[src]; the inverse op is row[src] -= f * row[dst] on Qinv."""
        for mat in (self.M, self.Q):
            for row in mat:
                if row[src]._c:
                    row[dst] = row[dst] + f * row[src]
        s, d = self.Qinv[dst], self.Qinv[src]
        for k in range(len(d)):
            if s[k]._c:
                d[k] = d[k] - f * s[k]

    def scale_row(self, i, raw):
        for mat in (self.M, self.P):
            mat[i] = [p.scale(raw) for p in mat[i]]

    def freeze(self, mode):
        F = self.F
        D = PolyMatrix._raw(F, self.M)
        return SmithDecomposition(
            D=D,
            P=PolyMatrix._raw(F, self.P),
            Q=PolyMatrix._raw(F, self.Q),
            Qinv=PolyMatrix._raw(F, self.Qinv),
            diag=D.diag(),
            mode=mode,
        )


def smith_normal_form(M):
    """Smith normal form of a square polynomial matrix with cofactor tracking.

    Pivot on a nonzero entry of least degree (first in row-major order), clear
    its row and column by Euclidean division, and restart whenever a nonzero
    remainder appears; the degree of the pivot strictly drops each restart.
    Once the pivot row and column are clear, an entry the pivot does not
    divide is pulled into the pivot row by a row addition.  Each pivot is
    made monic, which gives monic diagonal entries with ``d_i | d_{i+1}``.
    """
    n = M.require_square()
    F = M.field
    I = PolyMatrix.identity(F, n)
    w = _Work(M, I, I, I)
    W = w.M
    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    d = W[i][j].degree
                    if d >= 0 and (best is None or d < best[0]):
                        best = (d, i, j)
            if best is None:
                return w.freeze(INVARIANT_FACTORS)
            _, i, j = best
            w.swap_rows(t, i)
            w.swap_cols(t, j)
            pivot = W[t][t]
            dirty = False
            for i in range(t + 1, n):
                if W[i][t]._c:
                    q, r = divmod(W[i][t], pivot)
                    w.add_row(i, t, -q)
                    dirty = dirty or bool(r._c)
            if dirty:
                continue
            for j in range(t + 1, n):
                if W[t][j]._c:
                    q, r = divmod(W[t][j], pivot)
                    w.add_col(j, t, -q)
                    dirty = dirty or bool(r._c)
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if not pivot.divides(W[i][j])),
                None,
            )
            if bad is None:
                break
            w.add_row(t, bad, Polynomial.one(F))
        lc = W[t][t]._c[-1]
        if lc != 1:
            w.scale_row(t, F.inv(lc))
    return w.freeze(INVARIANT_FACTORS)


def _coprime_split(w, a, b, f, g):
    """Turn ``diag(1, f*g)`` at positions ``(a, b)`` into ``diag(f, g)``.

    With ``s*f + t*g = 1``, ``U = [[s, t], [-g, f]]`` and
    ``V = [[1, -t*g], [1, s*f]]`` satisfy ``U diag(f, g) V = diag(1, f*g)``;
    so ``P <- U^-1 P``, ``Q <- Q V^-1`` and ``Qinv <- V Qinv``.
    """
    d, s, t = gcd_ext(f, g)
    if not d.is_one():
        raise ValueError("coprime split needs coprime factors")
    zero = Polynomial.zero(w.F)
    # U^-1 = [[f, -t], [g, s]] acting on rows a, b of P
    Pa, Pb = w.P[a], w.P[b]
    w.P[a] = [f * x - t * y for x, y in zip(Pa, Pb)]
    w.P[b] = [g * x + s * y for x, y in zip(Pa, Pb)]
    # V^-1 = [[s*f, t*g], [-1, 1]] acting on columns a, b of Q
    sf, tg = s * f, t * g
    for row in w.Q:
        qa, qb = row[a], row[b]
        row[a] = sf * qa - qb
        row[b] = tg * qa + qb
    # V = [[1, -t*g], [1, s*f]] acting on rows a, b of Qinv
    Ra, Rb = w.Qinv[a], w.Qinv[b]
    w.Qinv[a] = [x - tg * y for x, y in zip(Ra, Rb)]
    w.Qinv[b] = [x + sf * y for x, y in zip(Ra, Rb)]
    w.M[a][a], w.M[b][b] = f, g
    w.M[a][b] = w.M[b][a] = zero


def _permute(w, order):
    """Reorder the diagonal: new position k takes old position ``order[k]``."""
    w.M = [[w.M[i][j] for j in order] for i in order]
    w.P = [w.P[i] for i in order]
    w.Q = [[row[j] for j in order] for row in w.Q]
    w.Qinv = [w.Qinv[i] for i in order]


def refine_to_elementary_divisors(S):
    """Split each invariant factor into prime powers ``(l - c)**m`` on the diagonal.

    Every nontrivial diagonal entry must split into linear factors over the
    field, otherwise :class:`CharPolyDoesNotSplit` carries the leftover part.
    Splitting starts from the last invariant factor and uses free ``1`` slots.
    The final order puts the ``1`` entries first, then eigenvalues ascending
    and, within one eigenvalue, exponents descending.
    """
    F = S.field
    splits = {}
    for pos, d in reversed(S.nontrivial()):
        sp = linear_split(d)
        if not sp.splits:
            raise CharPolyDoesNotSplit(sp.remainder)
        splits[pos] = sp

    w = _Work(S.D, S.P, S.Q, S.Qinv)
    free = [i for i, d in enumerate(S.diag) if d.is_one()]
    labels = {}  # position -> (eigenvalue, exponent)
    for pos, d in reversed(S.nontrivial()):
        roots = list(splits[pos].roots)
        rest = d
        while len(roots) > 1:
            r, m = roots.pop(0)
            f = Polynomial.linear(r) ** m
            g = rest.exact_div(f)
            slot = free.pop(0)
            _coprime_split(w, slot, pos, f, g)
            labels[slot] = (r, m)
            rest = g
        labels[pos] = roots[0]

    n = len(S.diag)
    ones = [i for i in range(n) if i not in labels]
    divs = sorted(labels, key=lambda i: (F.sort_key(labels[i][0].value), -labels[i][1], i))
    _permute(w, ones + divs)
    refined = w.freeze(ELEMENTARY_DIVISORS)
    return refined, refined.shape()


def verify_smith_identity(A, S):
    """Recompute ``P (lE - A) Q`` and ``Q Qinv``; False on any mismatch."""
    try:
        M = char_matrix(A)
        if S.D.field != A.field or S.D.shape != M.shape:
            return False
        if not S.D.is_diagonal() or S.D.diag() != tuple(S.diag):
            return False
        if S.P @ M @ S.Q != S.D:
            return False
        return S.Q @ S.Qinv == PolyMatrix.identity(A.field, A.rows)
    except (DimensionMismatch, FieldMismatch):
        return False


def divisibility_chain_holds(polys):
    return all(a.divides(b) for a, b in zip(polys, polys[1:]))
