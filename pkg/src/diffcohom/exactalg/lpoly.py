"""Dense univariate polynomials in the weight symbol with integer coefficients.

A polynomial is a tuple of Python ints, lowest degree first, with no
trailing zeros.  The zero polynomial is the empty tuple.  Everything here
is a plain function on tuples so the hot loops of the elimination code can
call them without object overhead.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

ZERO: tuple = ()
ONE: tuple = (1,)
X: tuple = (0, 1)


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def const(c: int) -> tuple:
    return (c,) if c else ()


def degree(p) -> int:
    return len(p) - 1


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def neg(a):
    return tuple(-c for c in a)


def sub(a, b):
    return add(a, neg(b))


def scale(a, c: int):
    if c == 0:
        return ()
    return tuple(c * x for x in a)


def mul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def content(a) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return ()
    g = content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return a
    return tuple(c // g for c in a)


def exact_div(a, b):
    """Quotient of ``a`` by ``b`` in Z[x]; raises ArithmeticError if inexact."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(b) == 1:
        d = b[0]
        out = []
        for c in a:
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out.append(q)
        return tuple(out)
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) < len(b):
        if any(a):
            raise ArithmeticError("inexact polynomial division")
        return ()
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        qc, r = divmod(c, lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[i - db] = qc
        for j in range(db + 1):
            a[i - db + j] -= qc * b[j]
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return trim(q)


def prem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` (scaled by a power of lc(b))."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [lb * x for x in a]
        for j in range(db + 1):
            a[shift + j] -= c * b[j]
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def gcd_poly(a, b):
    """Primitive gcd (positive leading coefficient) of two polynomials in Z[x].

    The integer content is not included; callers strip contents separately.
    """
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    if len(a) == 1 or len(b) == 1:
        return ONE
    a, b = primitive(a), primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return ONE
        a, b = b, primitive(prem(a, b))
    return primitive(a)


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return trim(tuple(i * c for i, c in enumerate(p))[1:])


def from_rationals(coeffs):
    """Clear denominators of rational coefficients: returns (int poly, denominator)."""
    coeffs = [Fraction(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    return trim(tuple(int(c * den) for c in coeffs)), den


def to_str(p, var: str = "lambda") -> str:
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
