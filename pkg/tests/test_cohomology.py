import json
from fractions import Fraction

import pytest

from diffcohom import cochains as cc
from diffcohom.cochains import Cochain2, NonIntegerOffset, WeightProfile
from diffcohom.cohomology import (
    ABSOLUTE_VECTP,
    CohomologyResult,
    NotACocycle,
    ZeroCohomology,
    absolute_h2_vectP,
    explicit_cocycle,
    find_special_weights,
    h1,
    invariant_bilinear,
    nontriviality,
    relative_h2,
    sl2_h2,
)
from diffcohom.exactalg import LAMBDA, QuadraticScalar, vectors_rank

F = Fraction
R19 = QuadraticScalar.sqrt(19)


def quad_roots(k, c):
    """(1 - k +- sqrt(c)) / 2 as exact scalars."""
    r = QuadraticScalar.sqrt(c)
    return [(1 - k + r) / 2, (1 - k - r) / 2]


# --- invariant operators ----------------------------------------------------------------

@pytest.mark.parametrize("k,n", [(5, 1), (8, 2), (9, 3), (4, 0), (11, 4)])
def test_invariant_bilinear_counts(k, n):
    assert len(invariant_bilinear(k, LAMBDA)) == n


# --- relative second cohomology ----------------------------------------------------------

@pytest.mark.parametrize("lam,mu,dim", [
    (F(0), F(5), 1), (F(-2), F(3), 1), (F(-4), F(1), 1), (F(-5, 2), F(7, 2), 1),
    ((R19 - 5) / 2, (R19 + 7) / 2, 1),
    (F(-3), F(4), 2), (F(1), F(8), 1),
    (F(0), F(12), 1), (F(-7), F(8), 1), (F(0), F(15), 0), (F(1), F(6), 0),
])
def test_relative_dimensions(lam, mu, dim):
    assert relative_h2(lam, mu).dim == dim


def test_relative_generic_orders():
    dims = [relative_h2(LAMBDA, k=k).dim for k in range(0, 16)]
    assert dims == [0] * 7 + [1] * 5 + [0] * 4


def test_relative_low_orders_have_no_unknowns():
    for k in range(5):
        res = relative_h2(F(1, 3), k=k)
        assert res.dim == res.cocycle_dim == 0


def test_order_five_representative_is_the_determinant():
    res = relative_h2(F(-2), k=5)
    [c] = res.basis
    assert c.table == {(3, 4): 1}


def test_order_seven_half_weight_basis():
    res = relative_h2(F(-3), k=7)
    assert res.coboundary_dim == 0
    assert [c.table.get((3, 4), 0) for c in res.basis] == [1, 0]
    assert [c.table.get((4, 5), 0) for c in res.basis] == [0, 1]


@pytest.mark.parametrize("k", range(7, 12))
def test_half_weight_kills_coboundaries(k):
    assert relative_h2(F(1 - k, 2), k=k).coboundary_dim == 0


@pytest.mark.parametrize("k", range(7, 12))
def test_representative_keeps_c34_where_first_coefficient_vanishes(k):
    for lam in quad_roots(k, 1 + 3 * k):
        [c] = relative_h2(lam, k=k).basis
        assert c.c(3, 4) == 1 and c.c(4, 5) == 0
        tags = find_special_weights(k).tags_for(lam)
        assert any(t.startswith("first coboundary coefficient") for t in tags)


@pytest.mark.parametrize("k", [12, 13, 14])
def test_orders_twelve_to_fourteen_vanish_at_first_coefficient_roots(k):
    for lam in quad_roots(k, 1 + 3 * k):
        assert relative_h2(lam, k=k).dim == 0


def test_oracle_flag_certifies():
    res = relative_h2(F(0), k=7, oracle=True)
    assert res.dim == 1
    assert res.certificate["oracle_checked"] is True


def test_mismatched_offset_rejected():
    with pytest.raises(NonIntegerOffset):
        relative_h2(F(0), F(5, 2))


# --- absolute second cohomology ---------------------------------------------------------

@pytest.mark.parametrize("lam,mu,dim", [
    (F(0), F(1), 1), (F(3), F(5), 1),
    (F(0), F(5), 2), (F(-4), F(1), 2), ((R19 - 5) / 2, (R19 + 7) / 2, 2),
    (F(-2), F(3), 0), (F(-5, 2), F(7, 2), 0),
    (F(0), F(12), 1), (F(1), F(13), 0),
])
def test_absolute_dimensions(lam, mu, dim):
    assert absolute_h2_vectP(lam, mu).dim == dim


@pytest.mark.parametrize("k,dim", [(3, 1), (9, 1), (5, 0), (6, 0), (15, 0)])
def test_absolute_generic(k, dim):
    assert absolute_h2_vectP(LAMBDA, k=k).dim == dim


def test_coboundaries_lie_in_cocycles():
    for mode in (cc.RELATIVE, cc.ABSOLUTE):
        for k in (5, 7, 9):
            for lam in (F(0), F(-3), LAMBDA):
                Z = cc.cocycle_system(k, lam, mode)
                _, vecs = cc.coboundary_vectors(k, lam, mode)
                assert all(Z.annihilates(v) for v in vecs)


@pytest.mark.parametrize("k,lam", [(5, F(0)), (7, F(-3)), (9, F(1, 2)), (2, F(-1, 2)), (6, (R19 - 5) / 2)])
def test_representatives_are_nontrivial_cocycles(k, lam):
    for fn, mode in ((relative_h2, cc.RELATIVE), (absolute_h2_vectP, ABSOLUTE_VECTP)):
        res = fn(lam, k=k)
        for c in res.basis:
            assert cc.cocycle_system(k, lam, cc.RELATIVE if mode == cc.RELATIVE else cc.ABSOLUTE) \
                .annihilates(c.vector(cc.RELATIVE if mode == cc.RELATIVE else cc.ABSOLUTE))
            assert nontriviality(c, mode)[0]
        # no combination of the basis is a coboundary either
        if res.dim > 1:
            cm = cc.RELATIVE if mode == cc.RELATIVE else cc.ABSOLUTE
            _, bvecs = cc.coboundary_vectors(k, lam, cm)
            vs = [c.vector(cm) for c in res.basis]
            n = len(vs[0])
            assert vectors_rank(bvecs + vs, n) == vectors_rank(bvecs, n) + res.dim


def test_result_json_round_trip():
    for res in (relative_h2(F(-3), k=7), absolute_h2_vectP((R19 - 5) / 2, k=6),
                relative_h2(LAMBDA, k=9), sl2_h2(F(0), k=1)):
        obj = json.loads(json.dumps(res.to_json()))
        assert CohomologyResult.from_json(obj) == res


def test_inconsistent_result_rejected():
    with pytest.raises(AssertionError):
        CohomologyResult(WeightProfile(F(0), 5), cc.RELATIVE, 2, [], 1, 0)


# --- sl(2) -------------------------------------------------------------------------

def test_sl2_multiplication_class():
    res = sl2_h2(F(0), F(1))
    assert res.dim == 1
    assert res.basis[0].table == {(1, 2): 1}
    assert res.certificate["omega_closed"] and res.certificate["omega_nontrivial"]


@pytest.mark.parametrize("lam,mu,dim", [(F(-1), F(2), 1), (F(0), F(2), 0), (F(-2), F(3), 1), (F(1), F(3), 0)])
def test_sl2_dimensions(lam, mu, dim):
    assert sl2_h2(lam, mu).dim == dim


def test_sl2_needs_positive_offset():
    with pytest.raises(NonIntegerOffset):
        sl2_h2(F(0), F(0))


# --- triviality witnesses --------------------------------------------------------------

def test_determinant_is_a_coboundary_at_weight_one():
    c = Cochain2(WeightProfile(F(1), 5), {(3, 4): 1}, relative=True)
    nontrivial, B = nontriviality(c)
    assert not nontrivial
    assert B.gamma(3) == F(-1, 5)
    assert cc.delta1(B).table == c.table


def test_determinant_is_nontrivial_at_zero():
    c = Cochain2(WeightProfile(F(0), 5), {(3, 4): 1}, relative=True)
    assert nontriviality(c) == (True, None)


def test_coboundary_has_a_witness():
    [B] = cc.relative_c1_basis(8, F(2, 3))
    c = cc.delta1(B)
    nontrivial, W = nontriviality(Cochain2(c.profile, c.table, relative=True))
    assert not nontrivial and cc.delta1(W).table == c.table


def test_non_cocycle_rejected():
    c = Cochain2(WeightProfile(F(0), 7), {(3, 4): 1, (4, 5): 17}, relative=True)
    with pytest.raises(NotACocycle):
        nontriviality(c)


# --- explicit representatives --------------------------------------------------------------

def test_explicit_order_two():
    [c] = explicit_cocycle("absolute", 2, F(-1, 2))
    assert c.c(1, 2) == 1 and c.c(1, 3) == 0


def test_explicit_order_three():
    [c] = explicit_cocycle("absolute", 3, F(-1))
    assert c.c(1, 2) == 1 and c.c(1, 3) == 0


def test_explicit_relative_order_five():
    for lam in (F(0), F(-2), F(-4)):
        [c] = explicit_cocycle("relative", 5, lam)
        assert c.table == {(3, 4): 1}


def test_explicit_raises_on_zero_cohomology():
    with pytest.raises(ZeroCohomology):
        explicit_cocycle("relative", 6, F(1))


# --- special weights -----------------------------------------------------------------

def test_special_weights_order_five():
    assert {F(0), F(-2), F(-4)} <= set(find_special_weights(5).roots())


def test_special_weights_order_six():
    assert {F(-5, 2), (R19 - 5) / 2, (-R19 - 5) / 2} <= set(find_special_weights(6).roots())


def test_special_weights_order_twelve():
    rep = find_special_weights(12)
    assert {F(-11, 2), F(0), F(-11)} <= set(rep.roots())
    assert any("extra equation" in t for t in rep.tags_for(F(0)))
    assert any("coboundary vanishes" in t for t in rep.tags_for(F(-11, 2)))


def test_special_weights_annihilate_their_polynomials():
    from diffcohom.exactalg import lpoly
    for k in range(1, 15):
        for e in find_special_weights(k).ledger:
            for r in e.roots:
                assert lpoly.evaluate(e.poly, r) == 0


def test_special_weights_need_positive_order():
    with pytest.raises(ValueError):
        find_special_weights(0)


# --- first cohomology (regression snapshot) --------------------------------------------

@pytest.mark.parametrize("mode,lam,k,expected", [
    ("relative", LAMBDA, 2, (1, 1, 0)),
    ("absolute", F(0), 1, (2, 2, 0)),
    ("relative", F(0), 5, (1, 1, 0)),
    ("absolute", LAMBDA, 3, (1, 2, 1)),
    ("absolute", F(0), 0, (1, 1, 0)),
    ("relative", F(1), 0, (0, 0, 0)),
    ("absolute", LAMBDA, 0, (1, 1, 0)),
    ("absolute", F(-1), 2, (1, 2, 1)),
    ("absolute", LAMBDA, 2, (1, 2, 1)),
    ("relative", F(-1), 3, (0, 1, 1)),
])
def test_h1_snapshot(mode, lam, k, expected):
    res = h1(mode, lam, k=k)
    assert (res.dim, res.cocycle_dim, res.coboundary_dim) == expected


def test_h1_negative_order_is_empty():
    assert h1("relative", F(0), k=-1).dim == 0
