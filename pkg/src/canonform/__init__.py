"""Exact Smith, Jordan and rational canonical forms over Q and GF(p)."""

from .canonical import (
    CanonicalResult,
    ElementaryDivisor,
    InvariantFactorList,
    SimilarityCertificate,
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
from .errors import (
    CanonError,
    CertificateInvalid,
    CharPolyDoesNotSplit,
    DimensionError,
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    NonpositiveSize,
    NotMonic,
    NotPrime,
    NotSquare,
    ParseError,
    Singular,
)
from .matrix import DenseMatrix, Vector
from .poly import LinearSplit, Polynomial, gcd_ext, horner_sequence, linear_split
from .polymatrix import (
    DiagonalShape,
    PolyMatrix,
    SmithDecomposition,
    char_matrix,
    is_unimodular,
    refine_to_elementary_divisors,
    smith_normal_form,
    verify_smith_identity,
)
from .scalar import GF, QQ, FieldDescriptor, Scalar

__version__ = "0.1.0"
