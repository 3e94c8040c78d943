import json
import random
from fractions import Fraction

import pytest

from diffcohom import cochains as cc
from diffcohom.cochains import (
    ABSOLUTE,
    RELATIVE,
    Cochain1,
    Cochain2,
    NonIntegerOffset,
    WeightProfile,
)
from diffcohom.densmod import Density, VectorField, WeightMismatch
from diffcohom.exactalg import LAMBDA, QuadraticScalar, nullspace, rank

F = Fraction


def mono(a):
    return VectorField.monomial(a)


def random_field(rng, deg):
    return VectorField(tuple(F(rng.randint(-4, 4)) for _ in range(deg + 1)))


# --- profiles and storage -----------------------------------------------------------

def test_profile_from_weights():
    p = WeightProfile.from_weights(F(-1, 2), F(9, 2))
    assert p.k == 5 and p.mu == F(9, 2)
    r19 = QuadraticScalar.sqrt(19)
    q = WeightProfile.from_weights((r19 - 5) / 2, (r19 + 7) / 2)
    assert q.k == 6


def test_profile_rejects_fractional_offset():
    with pytest.raises(NonIntegerOffset):
        WeightProfile.from_weights(F(0), F(1, 2))


def test_skew_storage():
    p = WeightProfile(F(0), 7)
    c = Cochain2(p, {(4, 3): 2})
    assert c.table == {(3, 4): -2}
    assert c.c(4, 3) == 2


def test_relative_flag_forbids_low_indices():
    with pytest.raises(ValueError):
        Cochain2(WeightProfile(F(0), 5), {(2, 3): 1}, relative=True)


def test_unknowns_are_lexicographic():
    us = cc.unknowns(9, RELATIVE)
    assert list(us) == sorted(us)
    assert all(3 <= i < j and i + j <= 11 for i, j in us)


# --- evaluation -------------------------------------------------------------------------

def test_eval_on_equal_arguments_vanishes():
    c = Cochain2(WeightProfile(F(1, 3), 5), {(1, 2): 1, (3, 4): 5})
    X = VectorField((F(1), F(2), F(0), F(3), F(1), F(1)))
    assert cc.eval_cochain2(c, X, X, Density.monomial(4, F(1, 3))).is_zero()


def test_eval_determinant_value():
    lam = F(2)
    c = Cochain2(WeightProfile(lam, 5), {(3, 4): 1})
    out = cc.eval_cochain2(c, mono(3), mono(4), Density.monomial(0, lam))
    assert out == Density.monomial(0, lam + 5, 144)


def test_eval_empty_table():
    c = Cochain2(WeightProfile(LAMBDA, 3), {})
    assert cc.eval_cochain2(c, mono(2), mono(5), Density.monomial(1, LAMBDA)).is_zero()


def test_eval_weight_mismatch():
    c = Cochain2(WeightProfile(F(0), 3), {(1, 2): 1})
    with pytest.raises(WeightMismatch):
        cc.eval_cochain2(c, mono(1), mono(2), Density.monomial(0, F(1)))


def test_eval_is_skew_and_homogeneous():
    rng = random.Random(3)
    k, lam = 6, F(-2, 5)
    table = {u: F(rng.randint(-4, 4)) for u in cc.unknowns(k, ABSOLUTE)}
    c = Cochain2(WeightProfile(lam, k), table)
    for a in range(9):
        for b in range(9):
            for m in range(5):
                phi = Density.monomial(m, lam)
                u = cc.eval_cochain2(c, mono(a), mono(b), phi)
                v = cc.eval_cochain2(c, mono(b), mono(a), phi)
                assert u == v.scale(-1)
                # x^a d, x^b d, x^m: each term has degree a + b + m - (k + 2)
                nz = [n for n, x in enumerate(u.coeffs) if x != 0]
                assert nz in ([], [a + b + m - (k + 2)])


# --- delta1 -----------------------------------------------------------------------------

def test_beta34_example():
    # the 1-cochain must vanish on sl(2) with gamma_3 = 1; a bare unit gamma_3 does not
    [B] = cc.relative_c1_basis(7, F(0))
    assert cc.delta1(B).c(3, 4) / B.gamma(3) == -35
    bare = cc.delta1(Cochain1(WeightProfile(F(0), 7), {3: 1}))
    assert bare.c(2, 3) != 0


def test_order_five_coboundary_factor():
    for lam in (F(1), F(-3), F(2, 3), LAMBDA):
        [B] = cc.relative_c1_basis(5, lam)
        c = cc.delta1(B)
        assert set(c.table) <= {(3, 4)}
        assert c.c(3, 4) == -F(1, 3) * lam * (2 + lam) * (4 + lam) * B.gamma(3)


@pytest.mark.parametrize("k", [7, 8, 9, 10, 11, 12, 13, 14])
def test_coboundary_vanishes_at_half_weight(k):
    lam = F(1 - k, 2)
    [B] = cc.relative_c1_basis(k, lam)
    c = cc.delta1(B)
    assert c.c(3, 4) == 0 and c.c(4, 5) == 0


def test_delta1_matches_operator_definition():
    rng = random.Random(8)
    k, lam = 6, F(3, 4)
    B = Cochain1(WeightProfile(lam, k), {i: F(rng.randint(-5, 5)) for i in range(k + 2)})
    c = cc.delta1(B)
    for _ in range(6):
        X, Y = random_field(rng, 8), random_field(rng, 8)
        assert cc.delta1_operator(B, X, Y) == cc.cochain2_operator(c, X, Y)


# --- residuals ------------------------------------------------------------------------

@pytest.mark.parametrize("k", [3, 6, 9])
def test_delta_delta_vanishes(k):
    rng = random.Random(k)
    lam = F(rng.randint(-6, 6), 5)
    for _ in range(5):
        B = Cochain1(WeightProfile(lam, k), {i: F(rng.randint(-5, 5)) for i in range(k + 2)})
        c = cc.delta1(B)
        for a, b, e in ((0, 3, 5), (2, 4, 7), (1, 5, 6), (3, 4, k + 4)):
            r = cc.delta2_residual(c, mono(a), mono(b), mono(e), Density.monomial(rng.randint(0, k + 3), lam))
            assert r.is_zero()


def test_order_five_determinant_is_a_cocycle():
    for lam in (F(0), F(1), LAMBDA):
        c = Cochain2(WeightProfile(lam, 5), {(3, 4): 1}, relative=True)
        assert cc.oracle_system(5, lam, RELATIVE).annihilates(c.vector(RELATIVE))


def test_wrong_order_seven_cochain_has_residual():
    lam = F(0)
    c = Cochain2(WeightProfile(lam, 7), {(3, 4): 1, (4, 5): 17}, relative=True)
    hit = False
    for a in range(12):
        for b in range(a + 1, 12):
            for e in range(b + 1, 12):
                if not cc.residual_operator(c, mono(a), mono(b), mono(e)).is_zero():
                    hit = True
                    break
            if hit:
                break
        if hit:
            break
    assert hit


# --- systems --------------------------------------------------------------------------

@pytest.mark.parametrize("k,nullity", [(4, 0), (6, 1), (7, 2), (8, 2), (9, 3)])
def test_invariance_system_nullity(k, nullity):
    M = cc.invariance_system(k, LAMBDA)
    assert M.ncols - rank(M) == nullity


def test_order_seven_free_coordinates():
    from diffcohom.exactalg import echelon
    M = cc.cocycle_system(7, LAMBDA, RELATIVE)
    E = echelon(M, cc.pivot_order(7, RELATIVE))
    us = cc.unknowns(7, RELATIVE)
    free = sorted(set(range(len(us))) - set(E.pivot_columns))
    assert [us[c] for c in free] == [(3, 4), (4, 5)] or {us[c] for c in free} == {(3, 4), (4, 5)}


@pytest.mark.parametrize("k", [7, 10, 12, 15])
def test_relative_cocycles_are_invariant(k):
    lam = F(1, 3)
    Z = nullspace(cc.cocycle_system(k, lam, RELATIVE))
    inv = cc.invariance_system(k, lam)
    assert all(inv.annihilates(v) for v in Z)


def test_cocycle_space_shrinks_past_eleven():
    def nullity(k, lam=LAMBDA):
        M = cc.cocycle_system(k, lam, RELATIVE)
        return M.ncols - rank(M)
    assert nullity(11) == 2 and nullity(12) == 1
    assert nullity(14, F(-13, 2)) == 2
    # at k = 15 one cocycle survives; generically it is the coboundary
    assert nullity(15) == 1 and nullity(15, F(-7)) == 1
    [B] = cc.relative_c1_basis(15, LAMBDA)
    assert cc.cocycle_system(15, LAMBDA, RELATIVE).annihilates(cc.delta1(B).vector(RELATIVE))


@pytest.mark.parametrize("k,lam", [(5, F(1)), (5, LAMBDA), (7, F(0)), (7, LAMBDA), (8, F(-3))])
def test_oracle_matches_closed_form_relative(k, lam):
    from diffcohom.exactalg import nullspace_equals
    N = nullspace(cc.cocycle_system(k, lam, RELATIVE))
    assert nullspace_equals(cc.oracle_system(k, lam, RELATIVE), N)


def test_oracle_nullity_order_five():
    for lam in (F(1), F(-2), F(7, 3)):
        M = cc.oracle_system(5, lam, RELATIVE)
        assert M.ncols - rank(M) == 1


def test_oracle_contains_multiplication_cocycle():
    c = Cochain2(WeightProfile(F(0), 1), {(1, 2): 1})
    assert cc.oracle_system(1, F(0), ABSOLUTE).annihilates(c.vector(ABSOLUTE))


def test_operator_engine_agrees_with_monomial_engine():
    from diffcohom.exactalg import same_nullspace
    A = cc.oracle_system(4, F(2, 3), ABSOLUTE, engine="monomial")
    B = cc.oracle_system(4, F(2, 3), ABSOLUTE, engine="operator")
    assert same_nullspace(A, B)


# --- serialization -----------------------------------------------------------------

def test_cochain_json_round_trip():
    r19 = QuadraticScalar.sqrt(19)
    for c in (Cochain2(WeightProfile(F(-1, 2), 2), {(1, 2): 1}),
              Cochain2(WeightProfile((r19 - 5) / 2, 6), {(3, 4): 1, (3, 5): (1 - r19 / 5) / 2}, True),
              Cochain2(WeightProfile(LAMBDA, 4), {(1, 3): 1, (1, 4): -(2 * LAMBDA + 1) / 2})):
        obj = json.loads(json.dumps(cc.cochain_to_json(c)))
        assert cc.cochain_from_json(obj) == c


def test_cochain_json_integer_entries_are_bare():
    c = Cochain2(WeightProfile(F(-1, 2), 2), {(1, 2): 1})
    assert cc.cochain_to_json(c)["entries"] == {"1,2": 1}


def test_latex_determinant_style():
    c = Cochain2(WeightProfile(F(0), 5), {(3, 4): 1}, True)
    tex = cc.cochain_to_latex(c)
    assert r"f''' & g'''" in tex and r"f^{(4)} & g^{(4)}" in tex
    assert tex.endswith("dx^{5}")
