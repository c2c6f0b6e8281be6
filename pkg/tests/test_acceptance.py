"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.
"""

import functools
import io
import json
import random
import time

import pytest

from canonform.canonical import (
    RATIONAL,
    char_poly,
    jordan_form,
    min_poly,
    rational_form,
    similar,
    verify_similarity,
    verify_witness,
)
from canonform.cli import main, parse_matrix_file, format_matrix_file
from canonform.errors import CharPolyDoesNotSplit
from canonform.matrix import DenseMatrix
from canonform.poly import Polynomial, eval_matrix
from canonform.polymatrix import (
    char_matrix,
    divisibility_chain_holds,
    is_unimodular,
    smith_normal_form,
    verify_smith_identity,
)
from canonform.scalar import GF, QQ

from oracles import gf2_conjugacy_classes, random_invertible, random_jordan, smith_diagonal_oracle, suite

TIME_LIMIT_S = 60.0


def report(number, title, failures, detail=""):
    status = "PASS" if not failures else "FAIL"
    extra = f" ({detail})" if detail else ""
    print(f"\n[{status}] criterion {number}: {title}{extra}; failures={len(failures)}")
    assert not failures, failures[:3]


@functools.lru_cache(maxsize=None)
def smith_suite():
    """(A, Smith decomposition) for the 600-matrix random suite, plus elapsed time."""
    start = time.perf_counter()
    out = [(A, smith_normal_form(char_matrix(A))) for A in suite()]
    return out, time.perf_counter() - start


def test_criterion_1_smith_certificates():
    pairs, smith_seconds = smith_suite()
    start = time.perf_counter()
    failures = []
    for k, (A, S) in enumerate(pairs):
        prod = Polynomial.one(A.field)
        for d in S.diag:
            prod = prod * d
        ok = (
            S.P @ char_matrix(A) @ S.Q == S.D
            and verify_smith_identity(A, S)
            and is_unimodular(S.P)
            and is_unimodular(S.Q)
            and divisibility_chain_holds(list(S.diag))
            and prod == char_matrix(A).det().monic()
        )
        if not ok:
            failures.append(k)
    elapsed = smith_seconds + time.perf_counter() - start
    counts = {str(f): sum(1 for A, _ in pairs if A.field == f) for f in (QQ, GF(2), GF(7))}
    report(1, "Smith certificate suite", failures, f"{len(pairs)} matrices {counts}, {elapsed:.1f}s")
    assert counts == {"rational": 200, "gf 2": 200, "gf 7": 200}
    assert elapsed < TIME_LIMIT_S


def test_criterion_2_determinantal_divisors():
    pairs, _ = smith_suite()
    failures, checked = [], 0
    for k, (A, S) in enumerate(pairs):
        if A.rows > 4:
            continue
        checked += 1
        if list(S.diag) != smith_diagonal_oracle(A):
            failures.append(k)
    report(2, "determinantal-divisor oracle", failures, f"{checked} matrices with n <= 4")
    assert checked > 0


def test_criterion_3_jordan_recovery():
    rng = random.Random(7)
    failures = []
    for k in range(100):
        J0, blocks = random_jordan(rng, nmax=6, eigenvalues=range(-2, 3), max_block=3)
        G = random_invertible(rng, QQ, J0.rows)
        A = G @ J0 @ G.inverse()
        res = jordan_form(A)
        got = sorted((int(b.eigenvalue.value), b.exponent) for b in res.blocks)
        S = res.transform
        if got != blocks or A @ S != S @ res.form or not S.det() or not verify_similarity(A, res):
            failures.append(k)
    report(3, "Jordan recovery from G J0 G^-1", failures, "100 conjugates")


def test_criterion_4_rational_certificates():
    pairs, _ = smith_suite()
    failures = []
    for k, (A, _) in enumerate(pairs):
        res = rational_form(A)
        S = res.transform
        if not (
            res.kind == RATIONAL
            and A @ S == S @ res.form
            and verify_similarity(A, res)
            and divisibility_chain_holds(list(res.blocks))
        ):
            failures.append(k)
    report(4, "rational-form certificates", failures, f"{len(pairs)} matrices")


def test_criterion_5_split_detection():
    L = Polynomial.lam(QQ)
    rows = [[0, 1], [-1, 0]]  # companion of l^2 + 1
    failures = []
    try:
        jordan_form(DenseMatrix(QQ, rows))
        failures.append("Q: no error")
    except CharPolyDoesNotSplit as e:
        if e.remainder != L**2 + 1:
            failures.append(f"Q: remainder {e.remainder}")
    res = jordan_form(DenseMatrix(GF(2), rows))
    if [(b.eigenvalue, b.exponent) for b in res.blocks] != [(GF(2)(1), 2)]:
        failures.append("GF(2)")
    res = jordan_form(DenseMatrix(GF(5), rows))
    if res.form != DenseMatrix(GF(5), [[2, 0], [0, 3]]):
        failures.append("GF(5)")
    report(5, "split detection (Q / GF(2) / GF(5))", failures)


def test_criterion_6_cayley_hamilton():
    pairs, _ = smith_suite()
    failures = []
    for k, (A, _) in enumerate(pairs):
        chi, mu = char_poly(A), min_poly(A)
        if not (eval_matrix(chi, A).is_zero() and eval_matrix(mu, A).is_zero() and mu.divides(chi)):
            failures.append(k)
    report(6, "Cayley-Hamilton and minimal polynomial", failures, f"{len(pairs)} matrices")


def test_criterion_7_similarity():
    rng = random.Random(11)
    failures = []
    fields = [(QQ, -3, 3), (GF(7), 0, 6), (GF(2), 0, 1)]
    for k in range(50):
        field, lo, hi = fields[k % 3]
        n = rng.randint(1, 5)
        A = DenseMatrix(field, [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        G = random_invertible(rng, field, n, lo, hi)
        B = G @ A @ G.inverse()
        cert = similar(A, B, witness=True)
        W = cert.witness
        if not (cert.similar and verify_witness(A, B, W) and A == W @ B @ W.inverse()):
            failures.append(("conjugate", k))
    if similar(DenseMatrix.zero(QQ, 2), DenseMatrix(QQ, [[0, 1], [0, 0]])).similar:
        failures.append("0 vs shift")
    mats, label = gf2_conjugacy_classes()
    for A in mats:
        for B in mats:
            if similar(A, B).similar != (label[A] == label[B]):
                failures.append(("gf2", A, B))
    report(7, "similarity decision", failures, f"50 conjugate pairs, {len(mats)**2} GF(2) pairs vs brute force")


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_criterion_8_cli_contract(fixtures_dir, tmp_path):
    failures = []
    for path in sorted(fixtures_dir.glob("*.mat")):
        if path.name == "notprime.mat":
            continue
        once = format_matrix_file(parse_matrix_file(path.read_text()))
        if format_matrix_file(parse_matrix_file(once)) != once:
            failures.append(("roundtrip", path.name))

    codes = {}
    codes[0], out, _ = _cli("jordan", fixtures_dir / "shear2.mat", "--format", "json", "--with-transform")
    if json.loads(out)["result"]["blocks"] != [{"eigenvalue": "1", "size": 2}]:
        failures.append("shear2 blocks")
    if _cli("jordan", fixtures_dir / "shear2.mat", "--format", "json", "--with-transform")[1] != out:
        failures.append("json not byte-identical")
    codes[2], _, err = _cli("jordan", fixtures_dir / "rot2.mat")
    if "l^2 + 1" not in err:
        failures.append("rot2 remainder")
    codes[3], _, _ = _cli("jordan", fixtures_dir / "notprime.mat")
    doc = json.loads(out)
    doc["result"]["transform"][1][1] = "5"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    codes[4], _, _ = _cli("verify", fixtures_dir / "shear2.mat", bad)
    for expected, got in codes.items():
        if expected != got:
            failures.append(("exit", expected, got))
    report(8, "CLI contract", failures, "fixture round-trip, exit codes 0/2/3/4")
