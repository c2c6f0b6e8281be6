"""Jordan and rational canonical forms built from the Smith form of ``lE - A``.

The operator is taken exactly as the relation ``(A_op E - A) e = 0`` defines
it on the standard basis: ``A_op e_i = sum_j A[i][j] e_j``.  In coordinates a
vector is a row ``x`` and the operator acts by ``x -> x @ A``.  With
``P (lE - A) Q = D`` the vectors ``y = Qinv(A_op) e`` satisfy
``d_i(A_op) y_i = 0``; listing the basis vectors built from the ``y_i`` as the
rows of ``T`` gives ``T A = F T``, so the certificate is ``S = T**-1`` with
``A S = S F``.
"""

from dataclasses import dataclass

from .errors import CertificateInvalid, DimensionMismatch, FieldMismatch, NonpositiveSize, NotMonic, Singular
from .matrix import DenseMatrix, Vector
from .poly import Polynomial, linear_split
from .polymatrix import (
    char_matrix,
    divisibility_chain_holds,
    refine_to_elementary_divisors,
    smith_normal_form,
)

JORDAN = "jordan"
RATIONAL = "rational"


@dataclass(frozen=True)
class InvariantFactorList:
    factors: tuple

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def degrees(self):
        return [f.degree for f in self.factors]


@dataclass(frozen=True)
class ElementaryDivisor:
    eigenvalue: object  # Scalar
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise NonpositiveSize(f"exponent {self.exponent} < 1")

    @property
    def size(self):
        return self.exponent

    def polynomial(self):
        return Polynomial.linear(self.eigenvalue) ** self.exponent


@dataclass(frozen=True)
class CanonicalResult:
    """``A @ transform == transform @ form``.

    ``blocks`` holds :class:`ElementaryDivisor` for Jordan results and monic
    polynomials for rational ones; ``generators`` are the cyclic vectors in row
    coordinates, one per block.
    """

    kind: str
    form: DenseMatrix
    transform: DenseMatrix
    blocks: tuple
    generators: tuple

    def block_sizes(self):
        if self.kind == JORDAN:
            return [b.exponent for b in self.blocks]
        return [g.degree for g in self.blocks]


@dataclass(frozen=True)
class SimilarityCertificate:
    similar: bool
    invariants_left: InvariantFactorList
    invariants_right: InvariantFactorList
    witness: DenseMatrix = None


def _field_check(A, B):
    if A.field != B.field:
        raise FieldMismatch(f"{A.field!r} and {B.field!r}")


def invariant_factors(A, smith=None):
    """Nontrivial monic invariant factors of ``A`` in divisibility order."""
    A.require_square()
    S = smith if smith is not None else smith_normal_form(char_matrix(A))
    return InvariantFactorList(tuple(d for _, d in S.nontrivial()))


def char_poly(A):
    factors = invariant_factors(A)
    prod = Polynomial.one(A.field)
    for f in factors:
        prod = prod * f
    if prod != char_matrix(A).det().monic():
        raise CertificateInvalid("product of invariant factors differs from det(lE - A)")
    return prod


def min_poly(A):
    return invariant_factors(A).factors[-1]


def _eval_on_row(f, v, A):
    """``v @ f(A)`` by Horner's rule without forming ``f(A)``."""
    F = A.field
    acc = Vector.zero(F, v.dim)
    for c in reversed(f._c):
        acc = (acc @ A) + v.scale(c)
    return acc


def extract_generators(S, A):
    """Cyclic generators ``y_p = sum_k e_k Qinv[p][k](A)`` for each nontrivial ``D[p][p]``.

    Only the rows of ``Qinv`` at nontrivial positions are evaluated.  Raises
    :class:`CertificateInvalid` if some ``y_p @ d_p(A)`` is nonzero.
    """
    F = A.field
    n = A.require_square()
    gens = []
    for p, d in S.nontrivial():
        row = S.Qinv._m[p]
        top = max(q.degree for q in row)
        y = Vector.zero(F, n)
        for j in range(top, -1, -1):
            coeffs = Vector._raw(F, [q._c[j] if j < len(q._c) else F.zero for q in row])
            y = (y @ A) + coeffs
        if not _eval_on_row(d, y, A).is_zero():
            raise CertificateInvalid(f"generator at position {p} is not annihilated by {d}")
        gens.append(y)
    return tuple(gens)


def jordan_block(eigenvalue, size):
    if size < 1:
        raise NonpositiveSize(f"block size {size} < 1")
    F = eigenvalue.field
    ev = eigenvalue.value
    return DenseMatrix._raw(
        F,
        [[ev if i == j else (F.one if j == i + 1 else F.zero) for j in range(size)] for i in range(size)],
    )


def companion_block(g):
    """Ones on the superdiagonal and ``a_0, ..., a_{n-1}`` on the bottom row,
    where ``g = l**n - a_{n-1} l**(n-1) - ... - a_0``."""
    if g.degree < 1 or not g.is_monic():
        raise NotMonic(f"{g} is not monic of positive degree")
    F = g.field
    n = g.degree
    rows = [[F.one if j == i + 1 else F.zero for j in range(n)] for i in range(n - 1)]
    rows.append([F.reduce(-c) for c in g._c[:n]])
    return DenseMatrix._raw(F, rows)


def _assemble(kind, A, basis_rows, form, blocks, gens):
    if len(basis_rows) != A.rows:
        raise CertificateInvalid(f"{len(basis_rows)} basis vectors for dimension {A.rows}")
    T = DenseMatrix.from_vector_rows(basis_rows)
    try:
        S = T.inverse()
    except Singular:
        raise CertificateInvalid("assembled vectors do not form a basis") from None
    if A @ S != S @ form:
        raise CertificateInvalid("A S != S F")
    return CanonicalResult(kind, form, S, tuple(blocks), gens)


def jordan_form(A):
    """Jordan normal form of ``A`` with a similarity transform.

    Raises :class:`CharPolyDoesNotSplit` when some invariant factor has no
    complete set of roots in the field.
    """
    A.require_square()
    F = A.field
    S, _ = refine_to_elementary_divisors(smith_normal_form(char_matrix(A)))
    gens = extract_generators(S, A)
    rows, blocks, forms = [], [], []
    for (_, d), y in zip(S.nontrivial(), gens):
        m = d.degree
        ev = _root_of_power(d)
        N = A.add_diagonal(F.reduce(-ev.value))
        v = y
        for _ in range(m):
            rows.append(v)
            v = v @ N
        blocks.append(ElementaryDivisor(ev, m))
        forms.append(jordan_block(ev, m))
    return _assemble(JORDAN, A, rows, DenseMatrix.block_diag(forms), blocks, gens)


def _root_of_power(d):
    """The ``c`` with ``d == (l - c)**m``."""
    sp = linear_split(d)
    if len(sp.roots) != 1 or not sp.splits:
        raise CertificateInvalid(f"{d} is not a power of a linear factor")
    return sp.roots[0][0]


def rational_form(A):
    """Rational canonical form: one companion block per invariant factor."""
    A.require_square()
    S = smith_normal_form(char_matrix(A))
    gens = extract_generators(S, A)
    rows, blocks, forms = [], [], []
    for (_, g), y in zip(S.nontrivial(), gens):
        v = y
        for _ in range(g.degree):
            rows.append(v)
            v = v @ A
        blocks.append(g)
        forms.append(companion_block(g))
    return _assemble(RATIONAL, A, rows, DenseMatrix.block_diag(forms), blocks, gens)


def similar(A, B, witness=False):
    """Decide similarity by comparing invariant factors.

    With ``witness=True`` and a positive answer, also return ``W`` with
    ``A = W B W**-1`` built from the two rational-form transforms.
    """
    _field_check(A, B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"{A.shape} and {B.shape}")
    left, right = invariant_factors(A), invariant_factors(B)
    is_similar = left == right
    W = None
    if is_similar and witness:
        W = rational_form(A).transform @ rational_form(B).transform.inverse()
        if A @ W != W @ B:
            raise CertificateInvalid("similarity witness failed")
    return SimilarityCertificate(is_similar, left, right, W)


def verify_witness(A, B, W):
    try:
        return W.is_invertible() and A @ W == W @ B
    except (DimensionMismatch, FieldMismatch):
        return False


def verify_similarity(A, result):
    """Check ``A S = S F``, invertibility of ``S`` and the block pattern of ``F``."""
    try:
        n = A.require_square()
        if result.kind not in (JORDAN, RATIONAL):
            return False
        if result.form.shape != (n, n) or result.transform.shape != (n, n):
            return False
        if not result.blocks or sum(result.block_sizes()) != n:
            return False
        if result.kind == JORDAN:
            expected = [jordan_block(b.eigenvalue, b.exponent) for b in result.blocks]
        else:
            if not divisibility_chain_holds(list(result.blocks)):
                return False
            expected = [companion_block(g) for g in result.blocks]
        if DenseMatrix.block_diag(expected) != result.form:
            return False
        if not result.transform.is_invertible():
            return False
        return A @ result.transform == result.transform @ result.form
    except (DimensionMismatch, FieldMismatch, NotMonic, NonpositiveSize):
        return False
