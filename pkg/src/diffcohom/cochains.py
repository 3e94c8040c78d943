"""Homogeneous differential 1- and 2-cochains with values in D_{lambda,mu}.

A 2-cochain of offset ``k = mu - lambda`` is a table of constants ``c[i, j]``
(``i < j``, ``i + j <= k + 2``) standing for

    c(X, Y, phi) = sum c[i, j] (f^(i) g^(j) - f^(j) g^(i)) phi^(l),   l = k + 2 - i - j,

for ``X = f d/dx``, ``Y = g d/dx``.  A 1-cochain is a table ``gamma[i, j]``
with ``i + j = k + 1`` standing for ``sum gamma[i, j] f^(i) phi^(j)``.

Differentials follow the convention

    dB(X, Y)    = B([X, Y]) - X.B(Y) + Y.B(X)
    dc(X, Y, Z) = sum over cyclic (X, Y, Z) of  c([X, Y], Z) - X.c(Y, Z)

where ``X.A = L_X^mu o A - A o L_X^lambda``.  The closed-form systems are
produced by replacing ``f, g, h, phi`` with exponentials, so that
``f^(i)`` becomes ``p**i`` and a derivative of a product becomes
multiplication by the sum of the symbols.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, gcd

from .densmod import (
    Density,
    DiffOperator,
    VectorField,
    WeightMismatch,
    apply_operator,
    bracket,
    lie_operator,
    padd,
    pderiv,
    pmul,
    pscale,
    psub,
)
from .exactalg import ExactMatrix, QuadraticScalar, RationalFunction, normalize, scalar_from_json, scalar_str, scalar_to_json

RELATIVE = "relative"
ABSOLUTE = "absolute"
MODES = (RELATIVE, ABSOLUTE)


class NonIntegerOffset(ValueError):
    """mu - lambda is not a non-negative integer."""


@dataclass(frozen=True)
class WeightProfile:
    lam: object
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 0:
            raise NonIntegerOffset(f"offset k must be a non-negative integer, got {self.k!r}")
        object.__setattr__(self, "lam", normalize(self.lam))

    @property
    def mu(self):
        return self.lam + self.k

    @classmethod
    def from_weights(cls, lam, mu):
        d = normalize(mu - lam)
        if isinstance(d, QuadraticScalar) and d.b == 0:
            d = d.a
        elif isinstance(d, RationalFunction) and d.is_constant():
            d = d.constant_value()
        if not isinstance(d, Fraction) or d.denominator != 1 or d < 0:
            raise NonIntegerOffset(f"mu - lambda = {scalar_str(d)} is not a non-negative integer")
        return cls(lam, int(d))


# --- index sets -------------------------------------------------------------------

@lru_cache(maxsize=None)
def unknowns(k: int, mode: str = ABSOLUTE) -> tuple:
    """Index pairs (i, j), i < j, i + j <= k + 2, in lexicographic order."""
    lo = 3 if mode == RELATIVE else 0
    return tuple((i, j) for i in range(lo, k + 3) for j in range(i + 1, k + 3) if i + j <= k + 2)


def preferred_free_order(k: int, mode: str = RELATIVE) -> list:
    """Unknowns ranked by how strongly we want them as free parameters.

    c_{3,4} first, then c_{4,5}, c_{4,7}, ... (the generators of the
    invariant operators), then the rest in lexicographic order.
    """
    idx = {u: n for n, u in enumerate(unknowns(k, mode))}
    head = [(3, 4)] + [(4, j) for j in range(5, k + 3, 2)]
    if mode == ABSOLUTE:
        head = [(1, 2), (1, 3)] + head
    order = [idx[u] for u in head if u in idx]
    order += [n for n in range(len(idx)) if n not in order]
    return order


def pivot_order(k: int, mode: str = RELATIVE) -> list:
    """Column order for elimination: least-preferred free columns first."""
    return list(reversed(preferred_free_order(k, mode)))


def _skew(i, j):
    """Canonical (pair, sign) for c[i, j] or None on the diagonal."""
    if i == j:
        return None
    if i < j:
        return (i, j), 1
    return (j, i), -1


# --- cochain objects -----------------------------------------------------------

@dataclass(frozen=True)
class Cochain1:
    profile: WeightProfile
    table: dict = field(default_factory=dict)  # i -> gamma[i, k+1-i]

    def __post_init__(self):
        k = self.profile.k
        clean = {}
        for key, v in self.table.items():
            i = key[0] if isinstance(key, tuple) else key
            if isinstance(key, tuple) and sum(key) != k + 1:
                raise ValueError(f"index {key} does not sum to k+1={k + 1}")
            if not 0 <= i <= k + 1:
                raise ValueError(f"index {key} out of range")
            if v != 0:
                clean[i] = normalize(v)
        object.__setattr__(self, "table", clean)

    def gamma(self, i: int):
        return self.table.get(i, Fraction(0))

    def vector(self):
        return [self.gamma(i) for i in range(self.profile.k + 2)]

    def __hash__(self):
        return hash((self.profile, tuple(sorted(self.table.items()))))


@dataclass(frozen=True)
class Cochain2:
    profile: WeightProfile
    table: dict = field(default_factory=dict)  # (i, j) with i < j -> c[i, j]
    relative: bool = False

    def __post_init__(self):
        k = self.profile.k
        clean = {}
        for (i, j), v in self.table.items():
            sk = _skew(i, j)
            if sk is None:
                if v != 0:
                    raise ValueError("diagonal entries of a skew table must vanish")
                continue
            (a, b), s = sk
            if a < 0 or a + b > k + 2:
                raise ValueError(f"index ({i},{j}) outside i+j <= k+2 = {k + 2}")
            v = normalize(v) * s
            if v != 0:
                clean[(a, b)] = normalize(clean.get((a, b), 0) + v)
        clean = {u: v for u, v in clean.items() if v != 0}
        if self.relative and any(a <= 2 for a, _ in clean):
            raise ValueError("relative cochain has an entry with index <= 2")
        object.__setattr__(self, "table", clean)

    def c(self, i: int, j: int):
        sk = _skew(i, j)
        if sk is None:
            return Fraction(0)
        u, s = sk
        return s * self.table.get(u, Fraction(0))

    def vector(self, mode: str | None = None):
        mode = mode or (RELATIVE if self.relative else ABSOLUTE)
        us = unknowns(self.profile.k, mode)
        extra = set(self.table) - set(us)
        if extra:
            raise ValueError(f"entries {sorted(extra)} are not coordinates in {mode} mode")
        return [self.table.get(u, Fraction(0)) for u in us]

    @classmethod
    def from_vector(cls, profile, vec, mode: str):
        us = unknowns(profile.k, mode)
        return cls(profile, {u: v for u, v in zip(us, vec) if v != 0}, mode == RELATIVE)

    def __add__(self, other):
        t = dict(self.table)
        for u, v in other.table.items():
            t[u] = t.get(u, 0) + v
        return Cochain2(self.profile, t, self.relative and other.relative)

    def scale(self, a):
        return Cochain2(self.profile, {u: a * v for u, v in self.table.items()}, self.relative)

    def __hash__(self):
        return hash((self.profile, tuple(sorted(self.table.items())), self.relative))


# --- evaluation -------------------------------------------------------------------

def _pair_term(f, g, i, j):
    return psub(pmul(pderiv(f, i), pderiv(g, j)), pmul(pderiv(f, j), pderiv(g, i)))


def cochain2_operator(c: Cochain2, X: VectorField, Y: VectorField) -> DiffOperator:
    """The differential operator c(X, Y) in D_{lambda, mu}."""
    k = c.profile.k
    out = [() for _ in range(k + 3)]
    for (i, j), v in c.table.items():
        t = _pair_term(X.coeffs, Y.coeffs, i, j)
        if t:
            l = k + 2 - i - j
            out[l] = padd(out[l], pscale(t, v))
    return DiffOperator(c.profile.lam, c.profile.mu, tuple(out))


def cochain1_operator(B: Cochain1, X: VectorField) -> DiffOperator:
    k = B.profile.k
    out = [() for _ in range(k + 2)]
    for i, v in B.table.items():
        t = pderiv(X.coeffs, i)
        if t:
            out[k + 1 - i] = padd(out[k + 1 - i], pscale(t, v))
    return DiffOperator(B.profile.lam, B.profile.mu, tuple(out))


def _check_weight(profile, phi):
    if phi.weight != profile.lam:
        raise WeightMismatch(f"cochain expects weight {profile.lam}, got {phi.weight}")


def eval_cochain2(c: Cochain2, X: VectorField, Y: VectorField, phi: Density) -> Density:
    _check_weight(c.profile, phi)
    return apply_operator(cochain2_operator(c, X, Y), phi)


def eval_cochain1(B: Cochain1, X: VectorField, phi: Density) -> Density:
    _check_weight(B.profile, phi)
    return apply_operator(cochain1_operator(B, X), phi)


def delta1_operator(B: Cochain1, X: VectorField, Y: VectorField) -> DiffOperator:
    """dB(X, Y) computed by composing actual operators."""
    return (cochain1_operator(B, bracket(X, Y))
            - lie_operator(X, cochain1_operator(B, Y))
            + lie_operator(Y, cochain1_operator(B, X)))


def residual_operator(c: Cochain2, X: VectorField, Y: VectorField, Z: VectorField) -> DiffOperator:
    """The 2-cocycle defect dc(X, Y, Z) as an operator."""
    total = None
    for A, B, C in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
        term = cochain2_operator(c, bracket(A, B), C) - lie_operator(A, cochain2_operator(c, B, C))
        total = term if total is None else total + term
    return total


def delta2_residual(c: Cochain2, X, Y, Z, phi: Density) -> Density:
    _check_weight(c.profile, phi)
    return apply_operator(residual_operator(c, X, Y, Z), phi)


# --- closed-form differentials (symbol calculus) --------------------------------

def _addto(d, key, val):
    if val == 0:
        return
    w = d.get(key, 0) + val
    if w == 0:
        d.pop(key, None)
    else:
        d[key] = w


def delta1_symbol(gamma: dict, k: int, lam, mu) -> dict:
    """Coefficients of p^i q^j s^l in dB, as {(i, j, l): value}.

    ``gamma`` maps i -> gamma[i, k+1-i].
    """
    out: dict = {}

    def x_dot_b(sign, first):
        # X.B(Y) with X <-> ``first`` symbol, Y <-> the other one
        for i, g in gamma.items():
            j = k + 1 - i
            # (q + s + mu p) G(q, s)
            for (a, b, s_), coef in (((0, i + 1, j), 1), ((0, i, j + 1), 1), ((1, i, j), mu)):
                key = (a, b, s_) if first == "p" else (b, a, s_)
                _addto(out, key, sign * coef * g)
            # -(s + lam p) G(q, p + s)
            for t in range(j + 1):
                bt = comb(j, t)
                for (a, s_), coef in (((t, j - t + 1), 1), ((t + 1, j - t), lam)):
                    key = (a, i, s_) if first == "p" else (i, a, s_)
                    _addto(out, key, -sign * coef * bt * g)

    # B([X, Y]) <-> (q - p) G(p + q, s)
    for i, g in gamma.items():
        j = k + 1 - i
        for t in range(i + 1):
            bt = comb(i, t)
            _addto(out, (t, i - t + 1, j), bt * g)
            _addto(out, (t + 1, i - t, j), -bt * g)
    x_dot_b(-1, "p")
    x_dot_b(+1, "q")
    return out


def delta1(B: Cochain1, relative: bool | None = None) -> Cochain2:
    """Closed-form coboundary of a 1-cochain."""
    k = B.profile.k
    sym = delta1_symbol(B.table, k, B.profile.lam, B.profile.mu)
    table = {}
    for (i, j, l), v in sym.items():
        if i + j + l != k + 2:
            raise AssertionError("inhomogeneous term in dB")
        if i < j:
            table[(i, j)] = v
            if sym.get((j, i, l), 0) != -v:
                raise AssertionError("dB is not skew")
    if relative is None:
        relative = all(i >= 3 for i, _ in table) and all(i >= 3 for i in B.table)
    return Cochain2(B.profile, table, relative and all(i >= 3 for i, _ in table))


@lru_cache(maxsize=None)
def _cocycle_structure(k: int, mode: str):
    """Rows of dc = 0 as {monomial: {unknown index: (a, b)}}, value a + b*lambda.

    Monomial (al, be, ga, de) is the exponent of p^al q^be r^ga s^de, i.e. the
    component of f^(al) g^(be) h^(ga) phi^(de).
    """
    us = unknowns(k, mode)
    col = {u: n for n, u in enumerate(us)}
    rows: dict = {}

    def add(mono, n, a, b):
        row = rows.setdefault(mono, {})
        a0, b0 = row.get(n, (0, 0))
        row[n] = (a0 + a, b0 + b)

    perms = ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    for (i0, j0), n in col.items():
        for (i, j, sg) in ((i0, j0, 1), (j0, i0, -1)):
            l = k + 2 - i - j
            for A, B, C in perms:
                def put(ea, eb, ec, es, a, b):
                    e = [0, 0, 0]
                    e[A], e[B], e[C] = ea, eb, ec
                    add((e[0], e[1], e[2], es), n, sg * a, sg * b)

                # c([X,Y], Z): (B - A)(A + B)^i C^j s^l
                for t in range(i + 1):
                    bt = comb(i, t)
                    put(t, i - t + 1, j, l, bt, 0)
                    put(t + 1, i - t, j, l, -bt, 0)
                # -X.c(Y, Z): -(B + C + s + mu A) C(B, C, s) + (s + lam A) C(B, C, A + s)
                put(0, i + 1, j, l, -1, 0)
                put(0, i, j + 1, l, -1, 0)
                put(0, i, j, l + 1, -1, 0)
                put(1, i, j, l, -k, -1)
                for t in range(l + 1):
                    bt = comb(l, t)
                    put(t, i, j, l - t + 1, bt, 0)
                    put(t + 1, i, j, l - t, 0, bt)
    clean = {}
    for mono, row in rows.items():
        r = {n: ab for n, ab in row.items() if ab != (0, 0)}
        if r:
            clean[mono] = r
    return clean


def cocycle_components(k: int, mode: str = ABSOLUTE, ordered_only: bool = True):
    """The closed-form cocycle rows keyed by monomial exponent.

    By alternation in (X, Y, Z) only exponents al < be < ga carry independent
    equations; ``ordered_only=False`` returns every component.
    """
    rows = _cocycle_structure(k, mode)
    if not ordered_only:
        return rows
    return {m: r for m, r in rows.items() if m[0] < m[1] < m[2]}


def _instantiate(rows, lam):
    out = []
    for r in rows:
        d = {}
        for n, (a, b) in r.items():
            v = a + b * lam if b else Fraction(a)
            if v != 0:
                d[n] = normalize(v)
        if d:
            out.append(d)
    return out


def invariance_rows(k: int) -> list:
    """Invariance under x^2 d/dx for relative tables, as {unknown: (a, b)} rows."""
    us = unknowns(k, RELATIVE)
    col = {u: n for n, u in enumerate(us)}
    rows = []

    def term(row, i, j, a, b):
        sk = _skew(i, j)
        if sk is None or sk[0] not in col:
            return
        n = col[sk[0]]
        a0, b0 = row.get(n, (0, 0))
        row[n] = (a0 + sk[1] * a, b0 + sk[1] * b)

    for be in range(3, k + 3):
        for ga in range(be + 1, k + 3):
            row: dict = {}
            term(row, be + 1, ga, (be + 1) * (be - 2), 0)
            term(row, ga + 1, be, -(ga + 1) * (ga - 2), 0)
            e = k + 2 - be - ga
            term(row, be, ga, e * (k + 1 - be - ga), 2 * e)
            row = {n: ab for n, ab in row.items() if ab != (0, 0)}
            if row:
                rows.append(row)
    return rows


def invariance_system(k: int, lam) -> ExactMatrix:
    n = len(unknowns(k, RELATIVE))
    return ExactMatrix.from_sparse(_instantiate(invariance_rows(k), lam), n)


def cocycle_system(k: int, lam, mode: str = RELATIVE) -> ExactMatrix:
    """Matrix whose nullspace is the space of 2-cocycles in the given mode."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    n = len(unknowns(k, mode))
    rows = _instantiate(cocycle_components(k, mode).values(), lam)
    if mode == RELATIVE:
        rows = _instantiate(invariance_rows(k), lam) + rows
    return ExactMatrix.from_sparse(rows, n)


# --- brute-force oracle -------------------------------------------------------------

def _ff(n: int, r: int) -> int:
    """Falling factorial n (n-1) ... (n-r+1): the r-th derivative factor of x^n."""
    out = 1
    for t in range(r):
        out *= n - t
    return out


def _monomial_residual(i, j, k, lam, mu, a, b, c, m):
    """dc(x^a d/dx, x^b d/dx, x^c d/dx)(x^m) for the unit cochain c[i, j] = 1.

    Returns the coefficient of the single power x^(a+b+c+m-k-3).
    """
    l = k + 2 - i - j

    def pair(p, q, mm):
        # unit cochain on (x^p, x^q) applied to x^mm: a multiple of x^(p+q+mm-k-2)
        if p < 0 or q < 0 or mm < l:
            return 0
        return (_ff(p, i) * _ff(q, j) - _ff(p, j) * _ff(q, i)) * _ff(mm, l)

    total = 0
    for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
        # c([X, Y], Z) phi with [x^p, x^q] = (q - p) x^(p+q-1)
        if q != p:
            total += (q - p) * pair(p + q - 1, r, m)
        # -L^mu_X (c(Y, Z) phi): the inner result is a multiple of x^e
        e = q + r + m - k - 2
        inner = pair(q, r, m)
        if inner:
            total -= (e + mu * p) * inner
        # + c(Y, Z)(L^lambda_X phi), L_X x^m = (m + lambda p) x^(m+p-1)
        if m + p - 1 >= 0:
            total += (m + lam * p) * pair(q, r, m + p - 1)
    return total


def oracle_system(k: int, lam, mode: str = RELATIVE, full_box: bool = False,
                  engine: str = "monomial") -> ExactMatrix:
    """Cocycle equations obtained by evaluating dc on monomials.

    The defect of every unit cochain is evaluated on ``x^a d/dx, x^b d/dx,
    x^c d/dx`` and ``x^m dx^lambda`` for ``a, b, c <= k + 4`` and
    ``m <= k + 3``; each coefficient of a power of x is one row.  The defect
    is alternating in the three fields, so by default only ``a < b < c`` is
    visited; ``full_box`` walks all triples.

    ``engine="monomial"`` evaluates with falling factorials directly.
    ``engine="operator"`` builds the defect as a differential operator with
    :func:`residual_operator` (bracket and Lie action from densmod) and
    applies it; it is slower and serves as a second opinion.
    """
    if engine not in ("monomial", "operator"):
        raise ValueError(f"unknown oracle engine {engine!r}")
    us = unknowns(k, mode)
    profile = WeightProfile(lam, k)
    top = k + 4
    if full_box:
        triples = [(a, b, c) for a in range(top + 1) for b in range(top + 1) for c in range(top + 1)]
    else:
        triples = list(combinations(range(top + 1), 3))
    rows = []
    if engine == "monomial":
        # the defect is affine in lambda (mu = lambda + k), so two integer
        # evaluations give it exactly; duplicate rows are dropped up to scale
        seen = set()
        for a, b, c in triples:
            for m in range(k + 4):
                row = {}
                for n, (i, j) in enumerate(us):
                    v0 = _monomial_residual(i, j, k, 0, k, a, b, c, m)
                    v1 = _monomial_residual(i, j, k, 1, k + 1, a, b, c, m)
                    if v0 or v1:
                        row[n] = (v0, v1 - v0)
                if not row:
                    continue
                g = 0
                for x, y in row.values():
                    g = gcd(g, x, y)
                lead = next(iter(row.values()))
                if (lead[0] or lead[1]) < 0:
                    g = -g
                key = tuple((n, x // g, y // g) for n, (x, y) in row.items())
                if key not in seen:
                    seen.add(key)
                    rows.append(key)
        lam_ = profile.lam
        inst = []
        for key in rows:
            d = {}
            for n, x, y in key:
                v = x + y * lam_ if y else Fraction(x)
                if v != 0:
                    d[n] = v
            if d:
                inst.append(d)
        return ExactMatrix.from_sparse(inst, len(us))

    units = [Cochain2(profile, {u: 1}) for u in us]
    fields = [VectorField.monomial(a) for a in range(top + 1)]
    dens = [Density.monomial(m, profile.lam) for m in range(k + 4)]
    for a, b, c in triples:
        X, Y, Z = fields[a], fields[b], fields[c]
        block: dict = {}
        for n, e in enumerate(units):
            op = residual_operator(e, X, Y, Z)
            if op.is_zero():
                continue
            for m, phi in enumerate(dens):
                val = apply_operator(op, phi).coeffs
                for power, v in enumerate(val):
                    if v != 0:
                        block.setdefault((m, power), {})[n] = v
        rows.extend(block[key] for key in sorted(block))
    return ExactMatrix.from_sparse(rows, len(us))


# --- 1-cochain spaces --------------------------------------------------------------

def relative_c1_basis(k: int, lam) -> list[Cochain1]:
    """sl(2)-invariant 1-cochains vanishing on sl(2): constrained transvectants."""
    from .densmod import transvectant

    profile = WeightProfile(lam, k)
    out = []
    for J in transvectant(k + 1, -1, lam, vanishing=(0, 1, 2)):
        out.append(Cochain1(profile, {i: g for i, g in enumerate(J.gamma) if g != 0}))
    return out


def absolute_c1_basis(k: int, lam) -> list[Cochain1]:
    profile = WeightProfile(lam, k)
    return [Cochain1(profile, {i: 1}) for i in range(k + 2)]


def c1_basis(k: int, lam, mode: str) -> list[Cochain1]:
    return relative_c1_basis(k, lam) if mode == RELATIVE else absolute_c1_basis(k, lam)


def coboundary_vectors(k: int, lam, mode: str):
    """delta1 of a basis of the mode's 1-cochains, as coordinate vectors."""
    basis = c1_basis(k, lam, mode)
    return basis, [delta1(B).vector(mode) for B in basis]


# --- serialisation ------------------------------------------------------------------

def cochain_to_json(c: Cochain2):
    return {
        "k": c.profile.k,
        "lambda": scalar_to_json(c.profile.lam),
        "relative": c.relative,
        "entries": {f"{i},{j}": _entry_json(v) for (i, j), v in sorted(c.table.items())},
    }


def _entry_json(v):
    # integer coefficients are written as bare JSON numbers
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return scalar_to_json(v)


def cochain_from_json(obj) -> Cochain2:
    profile = WeightProfile(scalar_from_json(obj["lambda"]), int(obj["k"]))
    table = {}
    for key, v in obj["entries"].items():
        i, j = (int(t) for t in key.split(","))
        table[(i, j)] = scalar_from_json(v) if isinstance(v, dict) else Fraction(v)
    return Cochain2(profile, table, bool(obj.get("relative", False)))


def cochain1_to_json(B: Cochain1):
    k = B.profile.k
    return {
        "k": k,
        "lambda": scalar_to_json(B.profile.lam),
        "entries": {f"{i},{k + 1 - i}": scalar_to_json(v) for i, v in sorted(B.table.items())},
    }


def _deriv_tex(name: str, n: int) -> str:
    if n == 0:
        return name
    if n <= 3:
        return name + "'" * n
    return f"{name}^{{({n})}}"


def _dop_tex(n: int) -> str:
    if n == 0:
        return ""
    if n == 1:
        return r"\frac{d}{dx}"
    return rf"\frac{{d^{{{n}}}}}{{dx^{{{n}}}}}"


def _scalar_tex(v) -> str:
    from .exactalg import RationalFunction

    s = scalar_str(v)
    if isinstance(v, RationalFunction):
        if s == "generic":
            return r"\lambda"
        s = s.replace("lambda", r"\lambda").replace("*", " ")
        m = re.fullmatch(r"\((.*)\)/\((.*)\)", s)
        if m:
            s = rf"\frac{{{m.group(1)}}}{{{m.group(2)}}}"
    elif isinstance(v, Fraction) and v.denominator != 1:
        sign = "-" if v < 0 else ""
        s = rf"{sign}\frac{{{abs(v.numerator)}}}{{{v.denominator}}}"
    else:
        s = s.replace("sqrt", r"\sqrt").replace("*", " ")
        s = s.replace(r"\sqrt(", r"\sqrt{").replace(")", "}") if r"\sqrt(" in s else s
    return s


def cochain_to_latex(c: Cochain2, use_omega: bool = True) -> str:
    """Determinant-style rendering of c(X, Y, phi dx^lambda)."""
    k = c.profile.k
    terms = []
    for (i, j), v in sorted(c.table.items(), key=lambda kv: (-(k + 2 - sum(kv[0])), kv[0])):
        l = k + 2 - i - j
        if use_omega and (i, j) == (1, 2):
            det = r"\omega(X,Y)"
        else:
            det = (r"\left|\begin{array}{ll} " + _deriv_tex("f", i) + " & " + _deriv_tex("g", i)
                   + r" \\ " + _deriv_tex("f", j) + " & " + _deriv_tex("g", j)
                   + r" \end{array}\right|")
        coef = "" if v == 1 else ("-" if v == -1 else _scalar_tex(v) + r"\,")
        if coef not in ("", "-") and not coef.startswith("-") and any(ch in coef for ch in "+ "):
            coef = r"\left(" + coef.rstrip(r"\,") + r"\right)\,"
        phi = _deriv_tex(r"\phi", l)
        terms.append(coef + det + r"\," + phi)
    body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
    lam = _scalar_tex(c.profile.lam)
    mu = _scalar_tex(c.profile.mu) if not isinstance(c.profile.lam, RationalFunction) else f"{lam}+{k}"
    return rf"c(X,Y,\phi\,dx^{{{lam}}}) = \left({body}\right)dx^{{{mu}}}"
