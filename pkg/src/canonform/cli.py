"""Command-line front end.

Matrix files look like::

    # comment
    field gf 7
    rows 2
    3 1
    0 3

Exit codes: 0 success, 2 characteristic polynomial does not split (Jordan
form unavailable over the field), 3 parse or usage error, 4 certificate check
failed.
"""

import argparse
import hashlib
import json
import re
import sys
from dataclasses import dataclass, field as dc_field

from .canonical import (
    JORDAN,
    RATIONAL,
    CanonicalResult,
    ElementaryDivisor,
    char_poly,
    jordan_form,
    min_poly,
    rational_form,
    similar,
    verify_similarity,
    verify_witness,
)
from .errors import (
    CanonError,
    CertificateInvalid,
    CharPolyDoesNotSplit,
    DimensionError,
    DimensionMismatch,
    NotPrime,
    ParseError,
)
from .matrix import DenseMatrix, Vector
from .poly import Polynomial
from .polymatrix import (
    char_matrix,
    divisibility_chain_holds,
    is_unimodular,
    refine_to_elementary_divisors,
    smith_normal_form,
    verify_smith_identity,
)
from .scalar import FieldDescriptor

EXIT_OK = 0
EXIT_NO_SPLIT = 2
EXIT_USAGE = 3
EXIT_CERTIFICATE = 4

COMMANDS = ("smith", "jordan", "rational", "charpoly", "minpoly", "similar", "verify")

_FIELD_RE = re.compile(r"^(?:rational|gf[\s:]*(\d+))$")


@dataclass(frozen=True)
class MatrixFile:
    field: FieldDescriptor
    n: int
    matrix: DenseMatrix


@dataclass
class Report:
    command: str
    field: FieldDescriptor
    n: int
    digest: str
    result: dict = dc_field(default_factory=dict)
    text: list = dc_field(default_factory=list)


def parse_field(text):
    """``rational``, ``gf 7``, ``gf:7`` or ``gf7``."""
    m = _FIELD_RE.match(text.strip().lower())
    if not m:
        raise ParseError(f"unknown field {text!r}")
    if m.group(1) is None:
        return FieldDescriptor.rationals()
    p = int(m.group(1))
    try:
        return FieldDescriptor.gf(p)
    except NotPrime:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from None


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield lineno, body


def parse_matrix_file(text, field=None):
    """Parse matrix-file text; ``field`` overrides the header's field."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty matrix file", 1)
    lineno, body = lines[0]
    words = body.split()
    if words[0] != "field":
        raise ParseError("expected 'field rational' or 'field gf <p>'", lineno, body.index(words[0]) + 1)
    try:
        header_field = parse_field(" ".join(words[1:]))
    except ParseError as e:
        raise ParseError(str(e), lineno, 1) from None
    F = field if field is not None else header_field

    if len(lines) < 2:
        raise ParseError("missing 'rows <n>' line", lineno + 1)
    lineno, body = lines[1]
    words = body.split()
    if len(words) != 2 or words[0] != "rows" or not words[1].isdigit() or int(words[1]) < 1:
        raise ParseError("expected 'rows <n>' with n >= 1", lineno, 1)
    n = int(words[1])

    data = lines[2:]
    if len(data) != n:
        raise DimensionError(f"expected {n} rows of entries, found {len(data)}")
    rows = []
    for lineno, body in data:
        row = []
        for m in re.finditer(r"\S+", body):
            try:
                row.append(F.parse_raw(m.group()))
            except ParseError as e:
                raise ParseError(str(e), lineno, m.start() + 1) from None
        if len(row) != n:
            raise DimensionError(f"line {lineno}: expected {n} entries, found {len(row)}")
        rows.append(row)
    return MatrixFile(F, n, DenseMatrix._raw(F, rows))


def format_matrix_file(mf):
    lines = [f"field {mf.field}", f"rows {mf.n}"]
    lines += [" ".join(str(x) for x in row) for row in mf.matrix.to_json()]
    return "\n".join(lines) + "\n"


def _digest(files):
    h = hashlib.sha256()
    for mf in files:
        h.update(format_matrix_file(mf).encode())
    return h.hexdigest()[:16]


def _jordan_payload(res, with_transform):
    out = {
        "kind": JORDAN,
        "blocks": [{"eigenvalue": str(b.eigenvalue), "size": b.exponent} for b in res.blocks],
        "form": res.form.to_json(),
    }
    if with_transform:
        out["transform"] = res.transform.to_json()
        out["generators"] = [[str(x) for x in y.entries] for y in res.generators]
    return out


def _rational_payload(res, with_transform):
    out = {
        "kind": RATIONAL,
        "blocks": [{"polynomial": g.to_json(), "size": g.degree} for g in res.blocks],
        "form": res.form.to_json(),
    }
    if with_transform:
        out["transform"] = res.transform.to_json()
        out["generators"] = [[str(x) for x in y.entries] for y in res.generators]
    return out


def _grid(title, M):
    return [f"{title}:"] + ["  " + line for line in M.format_grid().splitlines()]


def _canonical_text(res, with_transform):
    if res.kind == JORDAN:
        lines = ["blocks: " + ", ".join(f"J({b.eigenvalue}, {b.exponent})" for b in res.blocks)]
    else:
        lines = ["blocks: " + ", ".join(f"C({g})" for g in res.blocks)]
    lines += _grid("form", res.form)
    if with_transform:
        lines += _grid("transform", res.transform)
    return lines


def load_canonical_result(field, payload):
    """Rebuild a :class:`CanonicalResult` from a jordan/rational JSON result."""
    kind = payload.get("kind")
    if kind not in (JORDAN, RATIONAL) or "transform" not in payload:
        raise ParseError("report must be a jordan or rational result with a transform")
    try:
        form = DenseMatrix.from_json(field, payload["form"])
        transform = DenseMatrix.from_json(field, payload["transform"])
        if kind == JORDAN:
            blocks = [ElementaryDivisor(field(b["eigenvalue"]), int(b["size"])) for b in payload["blocks"]]
        else:
            blocks = [Polynomial.from_json(field, b["polynomial"]) for b in payload["blocks"]]
        gens = [Vector._raw(field, [field.parse_raw(x) for x in y]) for y in payload.get("generators", [])]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed report: {e}") from None
    return CanonicalResult(kind, form, transform, tuple(blocks), tuple(gens))


def run_command(command, files, with_transform=False, with_witness=False, verify=True, elementary=False, report_json=None):
    """Run one command on parsed matrix files and return a :class:`Report`.

    Raises :class:`CharPolyDoesNotSplit` and :class:`CertificateInvalid`; the
    caller maps them to exit codes.
    """
    mf = files[0]
    A = mf.matrix
    F = mf.field
    rep = Report(command, F, mf.n, _digest(files))
    res, text = rep.result, rep.text

    if command == "smith":
        S = smith_normal_form(char_matrix(A))
        if elementary:
            S, _ = refine_to_elementary_divisors(S)
        if verify:
            ok = verify_smith_identity(A, S) and is_unimodular(S.P) and is_unimodular(S.Q)
            if not elementary:
                ok = ok and divisibility_chain_holds(list(S.diag))
            if not ok:
                raise CertificateInvalid("Smith certificate failed verification")
        res["mode"] = S.mode
        res["diagonal"] = [d.to_json() for d in S.diag]
        res["nontrivial"] = [d.to_json() for _, d in S.nontrivial()]
        text.append(f"mode: {S.mode}")
        text.append("diagonal: " + ", ".join(f"[{d}]" for d in S.diag))
        if with_transform:
            res["P"] = S.P.to_json()
            res["Q"] = S.Q.to_json()
            res["Qinv"] = S.Qinv.to_json()
            for name in ("P", "Q", "Qinv"):
                M = getattr(S, name)
                text.append(f"{name}:")
                text.extend("  " + "  ".join(f"[{p}]" for p in row) for row in M.to_lists())
        res["verified"] = verify

    elif command == "jordan":
        R = jordan_form(A)
        if verify and not verify_similarity(A, R):
            raise CertificateInvalid("Jordan certificate failed verification")
        res.update(_jordan_payload(R, with_transform))
        res["verified"] = verify
        text.extend(_canonical_text(R, with_transform))

    elif command == "rational":
        R = rational_form(A)
        if verify and not verify_similarity(A, R):
            raise CertificateInvalid("rational certificate failed verification")
        res.update(_rational_payload(R, with_transform))
        res["verified"] = verify
        text.extend(_canonical_text(R, with_transform))

    elif command in ("charpoly", "minpoly"):
        p = char_poly(A) if command == "charpoly" else min_poly(A)
        res["polynomial"] = p.to_json()
        res["text"] = str(p)
        text.append(f"{command}: {p}")

    elif command == "similar":
        if len(files) != 2:
            raise ParseError("similar needs two matrix files")
        B = files[1].matrix
        if B.field != F:
            raise ParseError(f"field mismatch: {F} and {B.field}")
        if B.shape != A.shape:
            raise DimensionMismatch(f"dimensions {mf.n} and {files[1].n}")
        cert = similar(A, B, witness=with_witness)
        if verify and cert.witness is not None and not verify_witness(A, B, cert.witness):
            raise CertificateInvalid("similarity witness failed verification")
        res["similar"] = cert.similar
        res["invariants_left"] = [g.to_json() for g in cert.invariants_left]
        res["invariants_right"] = [g.to_json() for g in cert.invariants_right]
        text.append(f"similar: {'true' if cert.similar else 'false'}")
        text.append("invariants_left: " + ", ".join(f"[{g}]" for g in cert.invariants_left))
        text.append("invariants_right: " + ", ".join(f"[{g}]" for g in cert.invariants_right))
        if cert.witness is not None:
            res["witness"] = cert.witness.to_json()
            text.extend(_grid("witness", cert.witness))

    elif command == "verify":
        if report_json is None:
            raise ParseError("verify needs a JSON report produced with --with-transform")
        result = load_canonical_result(F, report_json.get("result", report_json))
        ok = verify_similarity(A, result)
        res["kind"] = result.kind
        res["valid"] = ok
        text.append(f"valid: {'true' if ok else 'false'}")
        if not ok:
            raise CertificateInvalid("supplied certificate does not verify")

    else:
        raise ParseError(f"unknown command {command!r}")
    return rep


def emit_report(rep, fmt="text"):
    if fmt == "json":
        doc = {
            "command": rep.command,
            "field": str(rep.field),
            "n": rep.n,
            "digest": rep.digest,
            "result": rep.result,
        }
        return json.dumps(doc, indent=2) + "\n"
    head = [f"command: {rep.command}", f"field: {rep.field}", f"n: {rep.n}"]
    return "\n".join(head + rep.text) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="canonform", description="Exact Smith, Jordan and rational canonical forms.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="+", help="matrix file(s); for verify: matrix file then JSON report")
    p.add_argument("--field", help="override the file's field: rational, gf:P")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--with-transform", action="store_true", help="include P, Q or the similarity transform")
    p.add_argument("--with-witness", action="store_true", help="similar: include W with A = W B W^-1")
    p.add_argument("--elementary", action="store_true", help="smith: split the diagonal into elementary divisors")
    p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True,
                   help="self-check certificates before printing (default on)")
    return p


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    files, report_json = [], None
    try:
        override = parse_field(args.field) if args.field else None
        paths = list(args.inputs)
        if args.command == "verify":
            if len(paths) != 2:
                raise ParseError("verify takes a matrix file and a JSON report")
            try:
                report_json = json.loads(_read(paths.pop()))
            except json.JSONDecodeError as e:
                raise ParseError(f"report is not JSON: {e.msg}", e.lineno, e.colno) from None
        expected = 2 if args.command == "similar" else 1
        if len(paths) != expected:
            raise ParseError(f"{args.command} takes {expected} matrix file(s)")
        files = [parse_matrix_file(_read(path), override) for path in paths]
        rep = run_command(
            args.command,
            files,
            with_transform=args.with_transform,
            with_witness=args.with_witness,
            verify=args.verify,
            elementary=args.elementary,
            report_json=report_json,
        )
    except CharPolyDoesNotSplit as e:
        mf = files[0]
        rep = Report(args.command, mf.field, mf.n, _digest(files))
        rep.result.update(error="CharPolyDoesNotSplit", remainder=e.remainder.to_json(), remainder_text=str(e.remainder))
        rep.text.append(f"error: does not split over {mf.field}; remainder {e.remainder}")
        stdout.write(emit_report(rep, args.format))
        stderr.write(f"canonform: characteristic polynomial does not split over {mf.field}; remainder {e.remainder}\n")
        return EXIT_NO_SPLIT
    except CertificateInvalid as e:
        stderr.write(f"canonform: certificate invalid: {e}\n")
        return EXIT_CERTIFICATE
    except (CanonError, OSError, ValueError) as e:
        stderr.write(f"canonform: {e}\n")
        return EXIT_USAGE
    stdout.write(emit_report(rep, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
