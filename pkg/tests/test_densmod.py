import random
from fractions import Fraction

import pytest

from diffcohom.densmod import (
    SL2,
    Density,
    DiffOperator,
    VectorField,
    WeightMismatch,
    apply_operator,
    apply_transvectant,
    bracket,
    gelfand_fuchs,
    lie_density,
    lie_operator,
    operator_from_json,
    operator_to_json,
    transvectant,
)
from diffcohom.exactalg import LAMBDA

F = Fraction
d = VectorField.monomial(0)
xd = VectorField.monomial(1)
x2d = VectorField.monomial(2)


def vf(*coeffs):
    return VectorField(tuple(F(c) for c in coeffs))


def test_bracket_sl2_relations():
    assert bracket(d, xd) == d
    assert bracket(xd, x2d) == x2d
    assert bracket(d, x2d) == xd.scale(2)


def test_jacobi_on_sample():
    X, Y, Z = (VectorField.monomial(a) for a in (2, 3, 5))
    s = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
    assert s.is_zero()


@pytest.mark.parametrize("m", range(6))
def test_euler_field_scales_monomials(m):
    lam = F(2, 7)
    out = lie_density(xd, Density.monomial(m, lam))
    assert out == Density.monomial(m, lam, m + lam)


def test_translation_kills_constants():
    assert lie_density(d, Density.monomial(0, LAMBDA)).is_zero()


def test_minus_one_densities_are_vector_fields():
    rng = random.Random(2)
    for _ in range(10):
        f = vf(*(rng.randint(-5, 5) for _ in range(4)))
        g = vf(*(rng.randint(-5, 5) for _ in range(4)))
        out = lie_density(f, Density(g.coeffs, -1))
        assert out.coeffs == bracket(f, g).coeffs


def test_identity_is_invariant():
    for lam in (F(0), F(-3, 2), LAMBDA):
        A = DiffOperator.identity(lam)
        assert lie_operator(vf(1, 2, 3), A).is_zero()


def test_operator_action_matches_definition_on_monomials():
    lam, mu = F(1, 3), F(10, 3)
    A = DiffOperator(lam, mu, ((1, 0, 2), (0, 3), (5,)))
    X = vf(1, -1, 0, 2)
    LA = lie_operator(X, A)
    for m in range(7):
        phi = Density.monomial(m, lam)
        lhs = apply_operator(LA, phi)
        rhs = lie_density(X, apply_operator(A, phi)) - apply_operator(A, lie_density(X, phi))
        assert lhs == rhs


def test_operator_action_axiom_random_cubics():
    rng = random.Random(11)
    for _ in range(5):
        X = vf(*(rng.randint(-3, 3) for _ in range(4)))
        Y = vf(*(rng.randint(-3, 3) for _ in range(4)))
        A = DiffOperator(LAMBDA, LAMBDA + 2, tuple(tuple(F(rng.randint(-3, 3)) for _ in range(3))
                                                    for _ in range(3)))
        lhs = lie_operator(bracket(X, Y), A)
        rhs = lie_operator(X, lie_operator(Y, A)) - lie_operator(Y, lie_operator(X, A))
        assert lhs == rhs


def test_operator_order_grows_by_at_most_one():
    A = DiffOperator(F(1), F(4), ((1,), (0, 1), (2, 0, 1)))
    assert lie_operator(vf(0, 0, 0, 1), A).order <= A.order + 1


def test_euler_field_grades_homogeneous_operators():
    # x^p d^n has weight p - n; x d/dx acts on it by (mu - lambda) + (p - n)
    lam, k = F(-1, 2), 3
    for p, n in ((0, 0), (2, 1), (4, 2), (1, 3)):
        coeffs = tuple(() for _ in range(n)) + ((0,) * p + (1,),)
        A = DiffOperator(lam, lam + k, coeffs)
        assert lie_operator(xd, A) == A.scale(k + p - n)


def test_weight_mismatch_on_addition():
    with pytest.raises(WeightMismatch):
        Density.monomial(0, F(1)) + Density.monomial(0, F(2))


def test_transvectant_order_zero_is_product():
    [J] = transvectant(0, F(1, 2), F(3))
    assert J.gamma == (1,)
    out = apply_transvectant(J, Density.monomial(2, F(1, 2)), Density.monomial(3, F(3)))
    assert out == Density.monomial(5, F(7, 2))


def test_transvectant_order_one_generic():
    tau, lam = F(2, 3), F(5, 7)
    [J] = transvectant(1, tau, lam)
    assert J.gamma[0] == 1 and J.gamma[1] == -lam / tau
    [Jg] = transvectant(1, LAMBDA + 1, LAMBDA)
    assert Jg.gamma[1] == -LAMBDA / (LAMBDA + 1)


def test_transvectant_order_one_on_sample():
    tau, lam = F(2, 3), F(5, 7)
    [J] = transvectant(1, tau, lam)
    out = apply_transvectant(J, Density.monomial(1, tau), Density.monomial(0, lam))
    # gamma_{0,1} phi psi' + gamma_{1,0} phi' psi = 0 + lambda-scaled constant
    assert out == Density.monomial(0, tau + lam + 1, J.gamma[1])


@pytest.mark.parametrize("k", [6, 8, 11])
def test_relative_transvectant_starts_at_index_three(k):
    lam = F(1, 3)
    Js = transvectant(k + 1, F(-1), lam, vanishing=(0, 1, 2))
    assert len(Js) == 1
    assert Js[0].gamma[:3] == (0, 0, 0) and Js[0].gamma[3] == 1


@pytest.mark.parametrize("k", range(0, 9))
def test_transvectant_is_sl2_equivariant(k):
    tau, lam = F(-3, 4), F(5, 3)
    for J in transvectant(k, tau, lam):
        for X in SL2:
            for m in range(5):
                for n in range(5):
                    phi, psi = Density.monomial(m, tau), Density.monomial(n, lam)
                    lhs = lie_density(X, apply_transvectant(J, phi, psi))
                    rhs = (apply_transvectant(J, lie_density(X, phi), psi)
                           + apply_transvectant(J, phi, lie_density(X, psi)))
                    assert lhs == rhs


def test_degenerate_weights_return_full_nullspace():
    # tau = -1/2 and lambda = -1/2 make two recurrence coefficients vanish
    assert len(transvectant(3, F(-1, 2), F(-1, 2))) >= 2


def test_gelfand_fuchs_values():
    assert gelfand_fuchs(d, xd).is_zero()
    assert gelfand_fuchs(x2d, VectorField.monomial(3)) == Density.monomial(2, 1, 6)


def test_gelfand_fuchs_is_a_cocycle():
    """Alternating cyclic defect vanishes on every monomial triple a, b, c <= 8."""
    one = Density((), 1)
    for a in range(9):
        for b in range(9):
            for c in range(9):
                X, Y, Z = (VectorField.monomial(t) for t in (a, b, c))
                total = one
                for P, Q, R in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
                    total = total + gelfand_fuchs(bracket(P, Q), R) - lie_density(P, gelfand_fuchs(Q, R))
                assert total.is_zero()
    assert not gelfand_fuchs(x2d, VectorField.monomial(3)).is_zero()


def test_operator_json_round_trip():
    A = DiffOperator(LAMBDA, LAMBDA + 2, ((1, 2), (), (0, 0, 3)))
    assert operator_from_json(operator_to_json(A)) == A
