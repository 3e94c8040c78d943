"""Polynomial vector fields, weighted densities and differential operators on the line.

Everything is polynomial in ``x`` with exact scalar coefficients.  A
polynomial is a tuple of scalars, constant term first, with no trailing
zeros.  Weights are scalars too, so a generic weight is just the symbol
:data:`~diffcohom.exactalg.LAMBDA` and the same code path runs over Q(lambda).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exactalg import ExactMatrix, nullspace, normalize
from .exactalg.scalars import common_field


class WeightMismatch(ValueError):
    """A density of the wrong weight was fed to an operator or pairing."""


# --- polynomials in x ---------------------------------------------------------

def ptrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return tuple(a)
    out = list(a)
    for i, c in enumerate(b):
        if c != 0:
            out[i] = out[i] + c
    return ptrim(out)


def pneg(a):
    return tuple(-c for c in a)


def psub(a, b):
    return padd(a, pneg(b))


def pscale(a, c):
    if c == 0:
        return ()
    return ptrim(c * x for x in a)


def pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y != 0:
                out[i + j] = out[i + j] + x * y
    return ptrim(out)


def pderiv(p, n: int = 1):
    """n-th derivative."""
    if n == 0:
        return tuple(p)
    if n >= len(p):
        return ()
    out = []
    for i in range(n, len(p)):
        f = 1
        for t in range(i - n + 1, i + 1):
            f *= t
        out.append(f * p[i] if p[i] != 0 else 0)
    return ptrim(out)


def peval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def monomial(m: int, c=1):
    return tuple([0] * m + [c]) if c != 0 else ()


def coeff(p, i: int):
    return p[i] if 0 <= i < len(p) else 0


def pfield(p):
    return common_field(p)


# --- the objects -----------------------------------------------------------------

@dataclass(frozen=True)
class VectorField:
    """``f(x) d/dx``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", ptrim(normalize(c) for c in self.coeffs))

    @classmethod
    def monomial(cls, a: int, c=1):
        return cls(monomial(a, c))

    def __add__(self, other):
        return VectorField(padd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return VectorField(psub(self.coeffs, other.coeffs))

    def scale(self, c):
        return VectorField(pscale(self.coeffs, c))

    def is_zero(self) -> bool:
        return not self.coeffs


SL2 = (VectorField.monomial(0), VectorField.monomial(1), VectorField.monomial(2))


@dataclass(frozen=True)
class Density:
    """``phi(x) dx^weight``."""

    coeffs: tuple
    weight: object

    def __post_init__(self):
        object.__setattr__(self, "coeffs", ptrim(normalize(c) for c in self.coeffs))
        object.__setattr__(self, "weight", normalize(self.weight))

    @classmethod
    def monomial(cls, m: int, weight, c=1):
        return cls(monomial(m, c), weight)

    def __add__(self, other):
        if other.weight != self.weight:
            raise WeightMismatch(f"adding densities of weights {self.weight} and {other.weight}")
        return Density(padd(self.coeffs, other.coeffs), self.weight)

    def __sub__(self, other):
        if other.weight != self.weight:
            raise WeightMismatch(f"subtracting densities of weights {self.weight} and {other.weight}")
        return Density(psub(self.coeffs, other.coeffs), self.weight)

    def scale(self, c):
        return Density(pscale(self.coeffs, c), self.weight)

    def is_zero(self) -> bool:
        return not self.coeffs


@dataclass(frozen=True)
class DiffOperator:
    """``sum_m a_m(x) (d/dx)^m`` from densities of weight ``lam`` to weight ``mu``."""

    lam: object
    mu: object
    coeffs: tuple  # tuple of polynomials a_0 .. a_N

    def __post_init__(self):
        cs = [ptrim(normalize(c) for c in a) for a in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "lam", normalize(self.lam))
        object.__setattr__(self, "mu", normalize(self.mu))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def identity(cls, lam):
        return cls(lam, lam, ((1,),))

    def __call__(self, phi: Density) -> Density:
        return apply_operator(self, phi)

    def _check(self, other):
        if self.lam != other.lam or self.mu != other.mu:
            raise WeightMismatch("operators between different density spaces")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + ((),) * (n - len(self.coeffs))
        b = other.coeffs + ((),) * (n - len(other.coeffs))
        return DiffOperator(self.lam, self.mu, tuple(padd(x, y) for x, y in zip(a, b)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return DiffOperator(self.lam, self.mu, tuple(pscale(a, c) for a in self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs


# --- operations -------------------------------------------------------------------

def bracket(X: VectorField, Y: VectorField) -> VectorField:
    """``[f d/dx, g d/dx] = (f g' - g f') d/dx``."""
    f, g = X.coeffs, Y.coeffs
    return VectorField(psub(pmul(f, pderiv(g)), pmul(g, pderiv(f))))


def lie_density(X: VectorField, phi: Density) -> Density:
    """Lie derivative on weight-lambda densities: ``f phi' + lambda f' phi``."""
    f, p, lam = X.coeffs, phi.coeffs, phi.weight
    return Density(padd(pmul(f, pderiv(p)), pscale(pmul(pderiv(f), p), lam)), lam)


def apply_operator(A: DiffOperator, phi: Density) -> Density:
    if phi.weight != A.lam:
        raise WeightMismatch(f"operator expects weight {A.lam}, got {phi.weight}")
    out = ()
    for m, a in enumerate(A.coeffs):
        if a:
            out = padd(out, pmul(a, pderiv(phi.coeffs, m)))
    return Density(out, A.mu)


def lie_operator(X: VectorField, A: DiffOperator) -> DiffOperator:
    """``L_X^mu o A - A o L_X^lam`` written back in the ``sum a_m d^m`` basis."""
    f = X.coeffs
    lam, mu = A.lam, A.mu
    N = len(A.coeffs)
    df = pderiv(f)
    fder = [f]
    for _ in range(N + 1):
        fder.append(pderiv(fder[-1]))
    out = [() for _ in range(N + 1)]
    for m, a in enumerate(A.coeffs):
        if not a:
            continue
        # L^mu o A:  f a' d^m + mu f' a d^m + f a d^(m+1)
        out[m] = padd(out[m], padd(pmul(f, pderiv(a)), pscale(pmul(df, a), mu)))
        out[m + 1] = padd(out[m + 1], pmul(f, a))
        # A o L^lam: sum_n a f^(m-n+1) (C(m, n-1) + lam C(m, n)) d^n
        for n in range(0, m + 2):
            c = comb(m, n - 1) if n >= 1 else 0
            c = c + lam * comb(m, n) if comb(m, n) else c
            if c == 0:
                continue
            fd = fder[m - n + 1]
            if fd:
                out[n] = psub(out[n], pscale(pmul(a, fd), c))
    return DiffOperator(lam, mu, tuple(out))


def compose(A: DiffOperator, B: DiffOperator) -> DiffOperator:
    """``A o B``."""
    if A.lam != B.mu:
        raise WeightMismatch("composition weights do not chain")
    out = {}
    for m, a in enumerate(A.coeffs):
        if not a:
            continue
        for n, b in enumerate(B.coeffs):
            if not b:
                continue
            # a d^m (b d^n) = a sum_t C(m,t) b^(t) d^(m-t+n)
            for t in range(m + 1):
                bt = pderiv(b, t)
                if bt:
                    idx = m - t + n
                    out[idx] = padd(out.get(idx, ()), pscale(pmul(a, bt), comb(m, t)))
    N = max(out) + 1 if out else 0
    return DiffOperator(B.lam, A.mu, tuple(out.get(i, ()) for i in range(N)))


def gelfand_fuchs(X: VectorField, Y: VectorField) -> Density:
    """``(f' g'' - f'' g') dx``, the weight-one density 2-cocycle."""
    f, g = X.coeffs, Y.coeffs
    return Density(psub(pmul(pderiv(f), pderiv(g, 2)), pmul(pderiv(f, 2), pderiv(g))), 1)


# --- transvectants ---------------------------------------------------------------

@dataclass(frozen=True)
class TransvectantCoeffs:
    """Coefficients ``gamma[i]`` of ``phi^(i) psi^(k-i)`` in ``J_k^{tau,lam}``."""

    k: int
    tau: object
    lam: object
    gamma: tuple  # gamma[i] multiplies phi^(i) psi^(k-i)

    def __getitem__(self, ij):
        i, j = ij
        if i + j != self.k:
            raise KeyError(ij)
        return self.gamma[i]


def transvectant_system(k: int, tau, lam, vanishing=()) -> ExactMatrix:
    """Rows of the adjacent-index recurrence, unknowns gamma_{i,k-i} for i = 0..k.

    ``vanishing`` lists extra indices i forced to zero.
    """
    rows = []
    for i in range(k):
        j = k - 1 - i
        a = (i + 1) * (i + 2 * tau)
        b = (j + 1) * (j + 2 * lam)
        row = {}
        if a != 0:
            row[i + 1] = normalize(a)
        if b != 0:
            row[i] = normalize(b)
        rows.append(row)
    for i in vanishing:
        if not 0 <= i <= k:
            continue
        rows.append({i: Fraction(1)})
    return ExactMatrix.from_sparse(rows, k + 1)


def transvectant(k: int, tau, lam, vanishing=()) -> list[TransvectantCoeffs]:
    """Basis of solutions of the recurrence; lowest nonzero gamma scaled to 1."""
    if k < 0:
        raise ValueError("k must be non-negative")
    M = transvectant_system(k, tau, lam, vanishing)
    basis = []
    for v in nullspace(M):
        i0 = next(i for i, c in enumerate(v) if c != 0)
        s = v[i0]
        basis.append(TransvectantCoeffs(k, normalize(tau), normalize(lam),
                                        tuple(normalize(c / s) for c in v)))
    basis.sort(key=lambda J: next(i for i, c in enumerate(J.gamma) if c != 0))
    return basis


def apply_transvectant(J: TransvectantCoeffs, phi: Density, psi: Density) -> Density:
    if phi.weight != J.tau or psi.weight != J.lam:
        raise WeightMismatch(
            f"transvectant expects weights ({J.tau}, {J.lam}), got ({phi.weight}, {psi.weight})")
    out = ()
    for i, g in enumerate(J.gamma):
        if g != 0:
            out = padd(out, pscale(pmul(pderiv(phi.coeffs, i), pderiv(psi.coeffs, J.k - i)), g))
    return Density(out, J.tau + J.lam + J.k)


# --- JSON ---------------------------------------------------------------------

def operator_to_json(A: DiffOperator):
    from .exactalg import scalar_to_json

    return {
        "lambda": scalar_to_json(A.lam),
        "mu": scalar_to_json(A.mu),
        "coeffs": [[scalar_to_json(c) for c in a] for a in A.coeffs],
    }


def operator_from_json(obj) -> DiffOperator:
    from .exactalg import scalar_from_json

    return DiffOperator(
        scalar_from_json(obj["lambda"]),
        scalar_from_json(obj["mu"]),
        tuple(tuple(scalar_from_json(c) for c in a) for a in obj["coeffs"]),
    )
