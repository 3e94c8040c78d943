"""Rational and real-quadratic roots of small integer polynomials."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from . import lpoly
from .scalars import QuadraticScalar, exact_sqrt_rational


class ZeroPolynomial(ValueError):
    """small_roots was handed the zero polynomial."""


class RootReport(NamedTuple):
    roots: list          # distinct exact roots, sorted by real value
    factors: list        # extracted factors (integer polys) whose product divides p
    unresolved: list     # residual factors with no rational or real quadratic root


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(p):
    """Distinct rational roots of an integer polynomial with p(0) != 0."""
    out = []
    for q in _divisors(p[-1]):
        for r in _divisors(p[0]):
            for s in (1, -1):
                x = Fraction(s * r, q)
                if x not in out and lpoly.evaluate(p, x) == 0:
                    out.append(x)
    return out


def _deflate(p, x: Fraction):
    lin = (-x.numerator, x.denominator)
    return lpoly.exact_div(p, lin), lin


def _quadratic_roots(p):
    c, b, a = p
    disc = Fraction(b * b - 4 * a * c)
    if disc < 0:
        return None
    r = exact_sqrt_rational(disc)
    return [(-b - r) / (2 * a), (-b + r) / (2 * a)]


def _split_quartic(p):
    """Factor a rational-root-free quartic into two quadratics over Q, if possible."""
    import sympy

    lam = sympy.Symbol("lam")
    expr = sum(c * lam ** i for i, c in enumerate(p))
    _, facs = sympy.factor_list(expr, lam)
    out = []
    for f, mult in facs:
        coeffs = [int(c) for c in reversed(sympy.Poly(f, lam).all_coeffs())]
        out.extend([tuple(coeffs)] * mult)
    return out


def _real_value(x) -> float:
    return x.to_float() if isinstance(x, QuadraticScalar) else float(x)


def small_roots(p) -> RootReport:
    """All roots of ``p`` (degree <= 4) in Q or in a real quadratic field."""
    p = lpoly.trim(tuple(p))
    if not p:
        raise ZeroPolynomial("small_roots of the zero polynomial")
    if len(p) - 1 > 4:
        raise ValueError("small_roots handles degree <= 4 only")
    roots, factors, unresolved = [], [], []
    while len(p) > 1 and p[0] == 0:
        p = p[1:]
        factors.append(lpoly.X)
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    changed = True
    while changed and len(p) > 1:
        changed = False
        for x in _rational_roots(p):
            if lpoly.evaluate(p, x) == 0:
                p, lin = _deflate(p, x)
                factors.append(lin)
                if x not in roots:
                    roots.append(x)
                changed = True
                break
    pieces = [p] if len(p) - 1 != 4 else _split_quartic(p)
    for piece in pieces:
        if len(piece) - 1 == 0:
            continue
        if len(piece) - 1 == 2:
            qr = _quadratic_roots(piece)
            if qr is None:
                unresolved.append(piece)
                continue
            factors.append(piece)
            for x in qr:
                if x not in roots:
                    roots.append(x)
        else:
            unresolved.append(piece)
    roots.sort(key=_real_value)
    return RootReport(roots, factors, unresolved)
