"""Exact scalar fields: Q, real quadratic fields Q(sqrt d), and Q(lambda).

Rationals are plain :class:`fractions.Fraction` (or ``int``).  The two other
fields get small immutable classes that interoperate with rationals through
the usual operator protocol.  Mixing two different radicands, or a
quadratic number with a rational function, raises :class:`MixedField`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt

from . import lpoly


class MixedField(TypeError):
    """Operands live in incompatible exact fields."""


class EvaluationPoleHit(ZeroDivisionError):
    """A rational function was evaluated at a zero of its denominator."""


class ScalarParseError(ValueError):
    pass


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n > 0`` as ``s**2 * d`` with ``d`` squarefree; return ``(s, d)``."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    return s, d * n


class QuadraticScalar:
    """``a + b*sqrt(d)`` with rational ``a``, ``b`` and squarefree ``d > 1``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if d <= 1 or squarefree_decompose(d)[0] != 1:
            raise ValueError(f"radicand must be squarefree and > 1, got {d}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    @classmethod
    def sqrt(cls, n: int) -> "QuadraticScalar | Fraction":
        """Exact square root of a positive integer, rational when possible."""
        s, d = squarefree_decompose(n)
        if d == 1:
            return Fraction(s)
        return cls(0, s, d)

    def _coerce(self, other):
        if isinstance(other, QuadraticScalar):
            if other.d != self.d:
                raise MixedField(f"sqrt({self.d}) mixed with sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticScalar(other, 0, self.d)
        if isinstance(other, RationalFunction):
            if other.is_constant():
                return QuadraticScalar(other.constant_value(), 0, self.d)
            raise MixedField("quadratic number mixed with a rational function")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticScalar(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticScalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticScalar(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticScalar(self.a * o.a + self.d * self.b * o.b,
                               self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self):
        return QuadraticScalar(self.a, -self.b, self.d)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        return QuadraticScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadraticScalar(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadraticScalar):
            if other.d != self.d:
                return self.b == 0 and other.b == 0 and self.a == other.a
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, RationalFunction):
            return self.b == 0 and other.is_constant() and other.constant_value() == self.a
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def to_float(self) -> float:
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        return f"QuadraticScalar({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return scalar_str(self)


class RationalFunction:
    """Element of Q(lambda) stored as a coprime pair of integer polynomials.

    Canonical form: numerator and denominator coprime in Q[lambda], the
    integer contents of the two share no factor, and the denominator has a
    positive leading coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=lpoly.ONE, _canonical: bool = False):
        if _canonical:
            self.num, self.den = num, den
            return
        num, den = lpoly.trim(num), lpoly.trim(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _canonicalize(num, den)

    @classmethod
    def variable(cls):
        return cls((0, 1), (1,), True)

    @classmethod
    def from_rational(cls, q):
        q = Fraction(q)
        return cls(lpoly.const(q.numerator), (q.denominator,), True)

    @classmethod
    def from_rational_coeffs(cls, coeffs):
        num, den = lpoly.from_rationals(coeffs)
        return cls(num, (den,))

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return Fraction(self.num[0] if self.num else 0, self.den[0])

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, int):
            return RationalFunction(lpoly.const(other), (1,), True)
        if isinstance(other, Fraction):
            return RationalFunction.from_rational(other)
        if isinstance(other, QuadraticScalar):
            if other.b == 0:
                return RationalFunction.from_rational(other.a)
            raise MixedField("rational function mixed with a quadratic number")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RationalFunction(lpoly.add(self.num, o.num), self.den)
        if len(self.den) == 1 and len(o.den) == 1:
            d1, d2 = self.den[0], o.den[0]
            num = lpoly.add(lpoly.scale(self.num, d2), lpoly.scale(o.num, d1))
            return RationalFunction(num, (d1 * d2,))
        num = lpoly.add(lpoly.mul(self.num, o.den), lpoly.mul(o.num, self.den))
        return RationalFunction(num, lpoly.mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(lpoly.neg(self.num), self.den, True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return RationalFunction((), (1,), True)
        return RationalFunction(lpoly.mul(self.num, o.num), lpoly.mul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunction((1,), (1,), True)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, QuadraticScalar):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def evaluate(self, x):
        """Value at a rational or quadratic point; raises EvaluationPoleHit at poles."""
        d = lpoly.evaluate(self.den, x)
        if d == 0:
            raise EvaluationPoleHit(f"pole of {self} at {x}")
        n = lpoly.evaluate(self.num, x)
        if isinstance(d, int) and isinstance(n, int):
            return Fraction(n, d)
        return n / d

    def __repr__(self):
        return f"RationalFunction({self.num}, {self.den})"

    def __str__(self):
        return scalar_str(self)


def _canonicalize(num, den):
    if not num:
        return (), (1,)
    if len(den) > 1 and len(num) > 1:
        g = lpoly.gcd_poly(num, den)
        if len(g) > 1:
            num = lpoly.exact_div(num, g)
            den = lpoly.exact_div(den, g)
    elif len(den) > 1 and len(num) == 1:
        pass
    c = gcd(lpoly.content(num), lpoly.content(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, den


LAMBDA = RationalFunction.variable()


# --- field bookkeeping ------------------------------------------------------

def field_of(x):
    """Field tag: ``'Q'``, ``('Q', d)`` for Q(sqrt d) or ``'Q(lambda)'``."""
    if isinstance(x, (int, Fraction)):
        return "Q"
    if isinstance(x, QuadraticScalar):
        return ("Q", x.d)
    if isinstance(x, RationalFunction):
        return "Q(lambda)"
    raise TypeError(f"not an exact scalar: {x!r}")


def join_fields(a, b):
    """Smallest common field tag, or MixedField when there is none."""
    if a == b or b == "Q":
        return a
    if a == "Q":
        return b
    raise MixedField(f"cannot combine {a} with {b}")


def common_field(values):
    tag = "Q"
    for v in values:
        tag = join_fields(tag, field_of(v))
    return tag


def field_arith(a, b, op: str):
    """Checked arithmetic in a single field; op is add, sub, mul or div."""
    join_fields(field_of(a), field_of(b))
    if op == "add":
        r = a + b
    elif op == "sub":
        r = a - b
    elif op == "mul":
        r = a * b
    elif op == "div":
        if b == 0:
            raise ZeroDivisionError("division by zero")
        r = Fraction(a) / b if isinstance(a, int) else a / b
    else:
        raise ValueError(f"unknown operation {op!r}")
    return normalize(r)


def normalize(x):
    """Collapse ints to Fraction; leave other fields untouched."""
    if isinstance(x, int):
        return Fraction(x)
    return x


def is_generic(x) -> bool:
    return isinstance(x, RationalFunction) and not x.is_constant()


# --- text and JSON forms ----------------------------------------------------

_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD = re.compile(rf"^\s*({_RAT})?\s*([+-])\s*(\d+(?:/\d+)?)?\s*\*?\s*sqrt\(\s*(\d+)\s*\)\s*$")
_RATONLY = re.compile(rf"^\s*({_RAT})\s*$")


def parse_scalar(text: str):
    """Parse ``INT``, ``INT/INT``, ``RAT (+|-) RAT*sqrt(INT)`` or ``generic``."""
    t = text.strip().replace("−", "-")
    if t == "generic":
        return LAMBDA
    m = _RATONLY.match(t)
    if m:
        try:
            return Fraction(m.group(1))
        except ZeroDivisionError as exc:
            raise ScalarParseError(f"zero denominator in {text!r}") from exc
    m = _QUAD.match(t)
    if m:
        a = Fraction(m.group(1)) if m.group(1) else Fraction(0)
        b = Fraction(m.group(3)) if m.group(3) else Fraction(1)
        if m.group(2) == "-":
            b = -b
        r = QuadraticScalar.sqrt(int(m.group(4)))
        return normalize(a + b * r)
    raise ScalarParseError(f"cannot parse scalar {text!r}")


def scalar_str(x) -> str:
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, QuadraticScalar):
        if x.b == 0:
            return str(x.a)
        sign = "-" if x.b < 0 else "+"
        b = abs(x.b)
        bs = "" if b == 1 else f"{b}*"
        if x.a == 0:
            return f"{'-' if x.b < 0 else ''}{bs}sqrt({x.d})"
        return f"{x.a}{sign}{bs}sqrt({x.d})"
    if isinstance(x, RationalFunction):
        if x == LAMBDA:
            return "generic"
        n = lpoly.to_str(x.num)
        if x.den == (1,):
            return n
        return f"({n})/({lpoly.to_str(x.den)})"
    raise TypeError(f"not an exact scalar: {x!r}")


def scalar_to_json(x):
    if isinstance(x, (int, Fraction)):
        q = Fraction(x)
        return {"num": q.numerator, "den": q.denominator}
    if isinstance(x, QuadraticScalar):
        return {"a": str(x.a), "b": str(x.b), "d": x.d}
    if isinstance(x, RationalFunction):
        if x == LAMBDA:
            return {"generic": True}
        return {"ratfunc": {"num": list(x.num), "den": list(x.den)}}
    raise TypeError(f"not an exact scalar: {x!r}")


def scalar_from_json(obj):
    if obj.get("generic"):
        return LAMBDA
    if "num" in obj:
        return Fraction(obj["num"], obj["den"])
    if "d" in obj:
        return QuadraticScalar(Fraction(obj["a"]), Fraction(obj["b"]), int(obj["d"]))
    if "ratfunc" in obj:
        rf = obj["ratfunc"]
        return RationalFunction(tuple(rf["num"]), tuple(rf["den"]))
    raise ScalarParseError(f"unrecognized scalar JSON {obj!r}")


def exact_sqrt_rational(q: Fraction):
    """sqrt of a non-negative rational as a rational or quadratic scalar."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    # sqrt(n/d) = sqrt(n*d)/d
    s, r = squarefree_decompose(n * d)
    if r == 1:
        return Fraction(s, d)
    return QuadraticScalar(0, Fraction(s, d), r)


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
