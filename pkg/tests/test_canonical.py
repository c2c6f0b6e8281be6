import dataclasses

import pytest

from canonform.canonical import (
    JORDAN,
    RATIONAL,
    ElementaryDivisor,
    char_poly,
    companion_block,
    extract_generators,
    invariant_factors,
    jordan_block,
    jordan_form,
    min_poly,
    rational_form,
    similar,
    verify_similarity,
)
from canonform.errors import CharPolyDoesNotSplit, DimensionMismatch, FieldMismatch, NonpositiveSize, NotMonic
from canonform.matrix import DenseMatrix
from canonform.poly import Polynomial, eval_matrix
from canonform.polymatrix import char_matrix, refine_to_elementary_divisors, smith_normal_form
from canonform.scalar import GF, QQ

from oracles import random_invertible, random_jordan, random_matrix, smith_diagonal_oracle

L = Polynomial.lam(QQ)


def M(rows, field=QQ):
    return DenseMatrix(field, rows)


def test_invariant_factor_examples():
    A = M([[3, 1], [0, 3]])
    assert invariant_factors(A).factors == ((L - 3) ** 2,)
    assert smith_diagonal_oracle(A)[-1] == (L - 3) ** 2
    assert invariant_factors(M([[2, 0], [0, 2]])).factors == (L - 2, L - 2)
    C = companion_block(L**2 + 1)
    assert C == M([[0, 1], [-1, 0]])
    assert invariant_factors(C).factors == (L**2 + 1,)
    assert smith_diagonal_oracle(C) == [Polynomial.one(QQ), L**2 + 1]


def test_char_min_examples():
    I2 = DenseMatrix.identity(QQ, 2)
    assert char_poly(I2) == (L - 1) ** 2
    assert min_poly(I2) == L - 1
    A = M([[3, 1], [0, 3]])
    assert char_poly(A) == min_poly(A) == (L - 3) ** 2


def test_generators_examples():
    A = M([[3, 1], [0, 3]])
    S = smith_normal_form(char_matrix(A))
    (y,) = extract_generators(S, A)
    N = A.add_diagonal(QQ(-3).value)
    assert (y @ N @ N).is_zero()
    assert not (y @ N).is_zero()

    A = M([[1, 0], [0, 2]])
    R, _ = refine_to_elementary_divisors(smith_normal_form(char_matrix(A)))
    y1, y2 = extract_generators(R, A)
    assert (y1 @ A.add_diagonal(QQ(-1).value)).is_zero() and not y1.is_zero()
    assert (y2 @ A.add_diagonal(QQ(-2).value)).is_zero() and not y2.is_zero()

    A = M([["7/3"]])
    (y,) = extract_generators(smith_normal_form(char_matrix(A)), A)
    assert y.dim == 1 and not y.is_zero()


def test_blocks():
    assert jordan_block(QQ(1), 2) == M([[1, 1], [0, 1]])
    assert companion_block(L**2 + 1) == M([[0, 1], [-1, 0]])
    assert companion_block(L - QQ("5/2")) == M([["5/2"]])
    # g = l^3 - a2 l^2 - a1 l - a0 puts (a0, a1, a2) on the bottom row
    assert companion_block(L**3 - 2 * L**2 - 3 * L - 4) == M([[0, 1, 0], [0, 0, 1], [4, 3, 2]])
    with pytest.raises(NonpositiveSize):
        jordan_block(QQ(1), 0)
    with pytest.raises(NotMonic):
        companion_block(2 * L + 1)
    with pytest.raises(NotMonic):
        companion_block(Polynomial.one(QQ))


def test_jordan_examples():
    A = M([[1, 1], [0, 1]])
    assert jordan_form(A).form == A

    A = M([[2, 0], [0, 1]])
    res = jordan_form(A)
    assert res.form == M([[1, 0], [0, 2]])
    assert A @ res.transform == res.transform @ res.form

    rot = [[0, 1], [-1, 0]]
    with pytest.raises(CharPolyDoesNotSplit) as exc:
        jordan_form(M(rot))
    assert exc.value.remainder == L**2 + 1
    res = jordan_form(M(rot, GF(2)))
    assert res.form == M([[1, 1], [0, 1]], GF(2))
    assert res.blocks == (ElementaryDivisor(GF(2)(1), 2),)


def test_jordan_nilpotent_shift():
    # the case where evaluating Qinv under the column action would break
    A = M([[0, 1], [0, 0]])
    res = jordan_form(A)
    assert res.form == A
    assert verify_similarity(A, res)


def test_rational_examples():
    C = companion_block(L**2 + 1)
    res = rational_form(C)
    assert res.form == C
    assert C @ res.transform == res.transform @ C

    res = rational_form(M([[3, 1], [0, 3]]))
    assert res.form == M([[0, 1], [-9, 6]])
    assert res.blocks == (L**2 - 6 * L + 9,)

    F5 = GF(5)
    L5 = Polynomial.lam(F5)
    g1, g2 = L5 - 1, (L5 - 1) * (L5 - 2)
    A = DenseMatrix.block_diag([companion_block(g1), companion_block(g2)])
    res = rational_form(A)
    assert res.form == A
    assert res.blocks == (g1, g2)


def test_similar_examples(rng):
    A = random_matrix(rng, QQ, 4, -3, 3)
    G = random_invertible(rng, QQ, 4)
    B = G @ A @ G.inverse()
    cert = similar(A, B, witness=True)
    assert cert.similar
    W = cert.witness
    assert A == W @ B @ W.inverse()

    Z = DenseMatrix.zero(QQ, 2)
    N = M([[0, 1], [0, 0]])
    cert = similar(Z, N)
    assert not cert.similar and cert.witness is None
    assert cert.invariants_left.factors == (L, L)
    assert cert.invariants_right.factors == (L**2,)
    assert smith_diagonal_oracle(Z)[1:] == [L] and smith_diagonal_oracle(N)[1:] == [L**2]

    cert = similar(A, A, witness=True)
    assert cert.similar and A @ cert.witness == cert.witness @ A


def test_similar_errors():
    with pytest.raises(DimensionMismatch):
        similar(DenseMatrix.identity(QQ, 2), DenseMatrix.identity(QQ, 3))
    with pytest.raises(FieldMismatch):
        similar(DenseMatrix.identity(QQ, 2), DenseMatrix.identity(GF(3), 2))


def test_verify_rejects_tampering():
    A = M([[2, 1, 0], [0, 2, 0], [1, 0, 3]])
    for res in (jordan_form(A), rational_form(A)):
        assert verify_similarity(A, res)
        zeroed = res.transform.with_column(0, res.transform.column(0).scale(0))
        assert not verify_similarity(A, dataclasses.replace(res, transform=zeroed))
    res = jordan_form(A)
    i = next(i for i in range(2) if res.form[i, i + 1] == QQ(1))
    assert not verify_similarity(A, dataclasses.replace(res, form=res.form.replace(i, i + 1, 2)))
    assert not verify_similarity(A, dataclasses.replace(res, kind="other"))
    assert not verify_similarity(A, dataclasses.replace(res, blocks=res.blocks[:-1]))


# -- properties ----------------------------------------------------------------

CASES = [(QQ, 5, -4, 4), (GF(7), 7, 0, 6), (GF(2), 7, 0, 1), (GF(3), 6, 0, 2)]


@pytest.mark.parametrize("field,nmax,lo,hi", CASES)
def test_certificates_and_annihilation(rng, field, nmax, lo, hi):
    for _ in range(20):
        A = random_matrix(rng, field, rng.randint(1, nmax), lo, hi)
        res = rational_form(A)
        assert res.kind == RATIONAL and verify_similarity(A, res)
        assert sum(res.block_sizes()) == A.rows
        for g, y in zip(res.blocks, res.generators):
            assert (y @ eval_matrix(g, A)).is_zero()
        try:
            res = jordan_form(A)
        except CharPolyDoesNotSplit as e:
            assert e.remainder.degree >= 2
            continue
        assert res.kind == JORDAN and verify_similarity(A, res)
        for b, y in zip(res.blocks, res.generators):
            assert (y @ eval_matrix(b.polynomial(), A)).is_zero()


@pytest.mark.parametrize("field,nmax,lo,hi", CASES)
def test_min_char_properties(rng, field, nmax, lo, hi):
    for _ in range(15):
        A = random_matrix(rng, field, rng.randint(1, nmax), lo, hi)
        chi, mu = char_poly(A), min_poly(A)
        assert chi.degree == A.rows
        assert mu.divides(chi)
        assert eval_matrix(chi, A).is_zero()
        assert eval_matrix(mu, A).is_zero()


def test_conjugation_invariance(rng):
    for _ in range(15):
        J0, blocks = random_jordan(rng, nmax=5)
        G = random_invertible(rng, QQ, J0.rows)
        A = G @ J0 @ G.inverse()
        res = jordan_form(A)
        assert sorted((int(b.eigenvalue.value), b.exponent) for b in res.blocks) == blocks
        H = random_invertible(rng, QQ, J0.rows)
        assert invariant_factors(H @ A @ H.inverse()) == invariant_factors(A)


@pytest.mark.parametrize("field,lo,hi", [(QQ, -3, 3), (GF(5), 0, 4)])
def test_jordan_fixed_point(rng, field, lo, hi):
    seen = 0
    while seen < 10:
        A = random_matrix(rng, field, rng.randint(1, 5), lo, hi)
        try:
            J = jordan_form(A).form
        except CharPolyDoesNotSplit:
            continue
        seen += 1
        assert jordan_form(J).form == J
        R = rational_form(A).form
        assert rational_form(R).form == R


def test_similar_is_equivalence(rng):
    for _ in range(8):
        n = rng.randint(1, 4)
        A = random_matrix(rng, GF(7), n, 0, 6)
        G, H = random_invertible(rng, GF(7), n, 0, 6), random_invertible(rng, GF(7), n, 0, 6)
        B = G @ A @ G.inverse()
        C = H @ B @ H.inverse()
        assert similar(A, A).similar
        assert similar(A, B).similar and similar(B, A).similar
        assert similar(A, C, witness=True).similar
