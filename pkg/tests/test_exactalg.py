import random
from fractions import Fraction

import pytest

from diffcohom.exactalg import (
    LAMBDA,
    ExactMatrix,
    MixedField,
    QuadraticScalar,
    RationalFunction,
    ScalarParseError,
    ZeroPolynomial,
    field_arith,
    generic_rank,
    lpoly,
    nullspace,
    nullspace_equals,
    parse_scalar,
    rank,
    rank_nullspace,
    scalar_from_json,
    scalar_to_json,
    small_roots,
)
from diffcohom import cochains as cc

F = Fraction
R19 = QuadraticScalar.sqrt(19)


# --- scalars -------------------------------------------------------------------

def test_rational_sum():
    assert field_arith(F(1, 2), F(1, 3), "add") == F(5, 6)


def test_quadratic_norm_is_rational():
    x = field_arith(1 + R19, 1 - R19, "mul")
    assert x == -18
    # the result stays in Q(sqrt 19), with zero irrational part
    assert x.b == 0 and x.d == 19


def test_rational_function_cancels():
    x = field_arith(LAMBDA * LAMBDA - 1, LAMBDA + 1, "div")
    assert x == LAMBDA - 1


def test_mixed_radicands_rejected():
    with pytest.raises(MixedField):
        field_arith(R19, QuadraticScalar.sqrt(2), "add")


def test_quadratic_with_lambda_rejected():
    with pytest.raises(MixedField):
        field_arith(R19, LAMBDA, "mul")


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        field_arith(F(1), F(0), "div")


def test_sqrt_of_square_is_rational():
    assert QuadraticScalar.sqrt(121) == 11
    assert isinstance(QuadraticScalar.sqrt(121), Fraction)
    # 12 = 4 * 3, so sqrt(12) lives in Q(sqrt 3)
    assert QuadraticScalar.sqrt(12) == 2 * QuadraticScalar.sqrt(3)


def test_rational_function_canonical_sign():
    r = RationalFunction((1,), (0, -1))  # 1 / (-lambda)
    assert r == -1 / LAMBDA


@pytest.mark.parametrize("text,value", [
    ("3", F(3)),
    ("-7/2", F(-7, 2)),
    ("-5/2+1/2*sqrt(19)", (R19 - 5) / 2),
    ("-5/2-1/2*sqrt(19)", (-R19 - 5) / 2),
    ("generic", LAMBDA),
])
def test_scalar_grammar(text, value):
    assert parse_scalar(text) == value


def test_scalar_grammar_rejects_junk():
    with pytest.raises(ScalarParseError):
        parse_scalar("lambda+1")


@pytest.mark.parametrize("x", [F(0), F(-3, 7), (R19 - 5) / 2, LAMBDA, (LAMBDA * 2 + 1) / 3])
def test_json_round_trip(x):
    assert scalar_from_json(scalar_to_json(x)) == x


def test_json_shapes():
    assert scalar_to_json(F(-1, 2)) == {"num": -1, "den": 2}
    assert scalar_to_json(LAMBDA) == {"generic": True}
    assert set(scalar_to_json(R19)) == {"a", "b", "d"}


# --- linear algebra --------------------------------------------------------------

def test_identity_rank():
    r, ns = rank_nullspace(ExactMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert (r, ns) == (3, [])


def test_zero_matrix_nullspace():
    r, ns = rank_nullspace(ExactMatrix([[0, 0, 0], [0, 0, 0]]))
    assert r == 0 and len(ns) == 3


def test_proportional_rows_over_lambda():
    M = ExactMatrix([[1, LAMBDA], [LAMBDA, LAMBDA * LAMBDA]])
    r, ns = rank_nullspace(M)
    assert r == 1
    [v] = ns
    # proportional to (-lambda, 1)
    assert v[0] / v[1] == -LAMBDA
    assert M.annihilates(v)


def test_generic_rank_examples():
    assert generic_rank(ExactMatrix([[LAMBDA, 1], [LAMBDA * LAMBDA, LAMBDA]])).rank == 1
    assert generic_rank(ExactMatrix([[1, LAMBDA], [0, LAMBDA - 1]])).rank == 2


def test_generic_rank_on_order_seven_cocycle_system():
    M = cc.cocycle_system(7, LAMBDA, cc.RELATIVE)
    assert M.ncols - generic_rank(M).rank == 2


@pytest.mark.parametrize("k", [5, 7, 8, 9, 10])
def test_fast_generic_rank_matches_symbolic(k):
    for mode in cc.MODES:
        M = cc.cocycle_system(k, LAMBDA, mode)
        fast = generic_rank(M, "probabilistic", seed=3)
        # a system without lambda in it is ranked exactly
        assert fast.method == ("certified" if M.field == "Q" else "probabilistic")
        assert fast.rank == generic_rank(M, "certified").rank


def test_quadratic_field_elimination():
    lam = (R19 - 5) / 2
    M = ExactMatrix([[1, lam], [lam, lam * lam], [2, 2 * lam]])
    assert rank(M) == 1


def test_rank_permutation_invariance():
    rng = random.Random(5)
    for k in (6, 9, 11):
        M = cc.cocycle_system(k, F(-2, 3), cc.ABSOLUTE)
        r0 = rank(M)
        for _ in range(3):
            rows = list(range(M.nrows))
            cols = list(range(M.ncols))
            rng.shuffle(rows)
            rng.shuffle(cols)
            assert rank(M.permuted(rows, cols)) == r0


@pytest.mark.parametrize("k", range(0, 17))
def test_nullspace_vectors_are_annihilated(k):
    for lam in (F(1, 3), LAMBDA):
        M = cc.cocycle_system(k, lam, cc.RELATIVE)
        ns = nullspace(M)
        assert len(ns) + rank(M) == M.ncols
        assert all(M.annihilates(v) for v in ns)


def test_nullspace_equals_detects_a_missing_vector():
    M = ExactMatrix([[1, 1, 0], [0, 0, 0]])
    full = nullspace(M)
    assert nullspace_equals(M, full)
    assert not nullspace_equals(M, full[:1])


# --- roots ----------------------------------------------------------------------

def test_roots_of_order_five_factor():
    rep = small_roots((0, 8, 6, 1))  # lambda (2+lambda) (4+lambda)
    assert sorted(rep.roots) == [-4, -2, 0]
    assert rep.unresolved == []


def test_sqrt19_roots():
    rep = small_roots((3, 10, 2))  # 3 + 2 lambda (5 + lambda)
    assert set(rep.roots) == {(R19 - 5) / 2, (-R19 - 5) / 2}


def test_linear_root():
    k = 7
    assert small_roots((k - 1, 2)).roots == [-3]


def test_unresolved_factor_is_reported():
    # lambda^3 - 2 has no rational or quadratic root
    rep = small_roots((-2, 0, 0, 1))
    assert rep.roots == []
    assert rep.unresolved


def test_zero_polynomial_raises():
    with pytest.raises(ZeroPolynomial):
        small_roots(())


def test_roots_annihilate_and_factors_divide():
    for poly in [(0, 8, 6, 1), (3, 10, 2), (24 - 168 + 144, 44, 4), (6, -5, -2, 1), (-2, 0, 0, 1)]:
        rep = small_roots(poly)
        for r in rep.roots:
            acc = F(0)
            for c in reversed(poly):
                acc = acc * r + c
            assert acc == 0
        prod = lpoly.const(1)
        for f in rep.factors + rep.unresolved:
            prod = lpoly.mul(prod, f)
        # same polynomial up to a rational constant
        assert lpoly.primitive(prod) == lpoly.primitive(lpoly.trim(poly))
