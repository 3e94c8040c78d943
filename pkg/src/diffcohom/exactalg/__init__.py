"""Exact fields and exact linear algebra."""

from . import lpoly
from .linalg import (
    Echelon,
    ExactMatrix,
    RankResult,
    echelon,
    generic_rank,
    nullspace,
    nullspace_equals,
    nullspace_from_echelon,
    rank,
    rank_nullspace,
    row_space_contains,
    same_nullspace,
    solve_in_span,
    vectors_rank,
)
from .roots import RootReport, ZeroPolynomial, small_roots
from .scalars import (
    LAMBDA,
    EvaluationPoleHit,
    MixedField,
    QuadraticScalar,
    RationalFunction,
    ScalarParseError,
    common_field,
    field_arith,
    field_of,
    is_generic,
    normalize,
    parse_scalar,
    scalar_from_json,
    scalar_str,
    scalar_to_json,
)

__all__ = [
    "lpoly",
    "Echelon",
    "ExactMatrix",
    "RankResult",
    "echelon",
    "generic_rank",
    "nullspace",
    "nullspace_equals",
    "nullspace_from_echelon",
    "rank",
    "rank_nullspace",
    "row_space_contains",
    "same_nullspace",
    "solve_in_span",
    "vectors_rank",
    "RootReport",
    "ZeroPolynomial",
    "small_roots",
    "LAMBDA",
    "EvaluationPoleHit",
    "MixedField",
    "QuadraticScalar",
    "RationalFunction",
    "ScalarParseError",
    "common_field",
    "field_arith",
    "field_of",
    "is_generic",
    "normalize",
    "parse_scalar",
    "scalar_from_json",
    "scalar_str",
    "scalar_to_json",
]
