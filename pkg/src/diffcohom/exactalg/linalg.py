"""Exact sparse-row elimination over Q, Q(sqrt d) and Q(lambda).

Rows are stored as ``{column: value}`` dicts with zero entries dropped; the
systems produced by the cochain code have a handful of nonzeros per row, so
this beats dense storage by a wide margin.

Over Q the rows are cleared to integers and eliminated fraction-free with
the row content divided out after every update.  Over Q(lambda) the same is
done in Z[lambda], stripping the polynomial content of each row.  Over a
quadratic field the elimination is ordinary Gauss with a unit pivot.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from . import lpoly
from .scalars import (
    EvaluationPoleHit,
    MixedField,
    QuadraticScalar,
    RationalFunction,
    common_field,
    field_of,
    normalize,
)


class ExactMatrix:
    """Rectangular matrix of exact scalars from a single field."""

    def __init__(self, rows, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        sparse = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            sparse.append({j: v for j, v in enumerate(r) if v != 0})
        self._init(sparse, ncols)

    @classmethod
    def from_sparse(cls, rows, ncols: int):
        self = cls.__new__(cls)
        clean = []
        for r in rows:
            d = {}
            for j, v in r.items():
                if not 0 <= j < ncols:
                    raise IndexError(f"column {j} out of range")
                if v != 0:
                    d[j] = v
            clean.append(d)
        self._init(clean, ncols)
        return self

    def _init(self, sparse, ncols):
        self.sparse = sparse
        self.ncols = ncols
        self.field = common_field(v for r in sparse for v in r.values())

    @property
    def nrows(self) -> int:
        return len(self.sparse)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def dense(self):
        zero = Fraction(0)
        return [[r.get(j, zero) for j in range(self.ncols)] for r in self.sparse]

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, field={self.field})"

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column counts differ")
        return ExactMatrix.from_sparse(self.sparse + other.sparse, self.ncols)

    def apply(self, v):
        """Matrix-vector product as a list of scalars."""
        out = []
        for r in self.sparse:
            acc = Fraction(0)
            for j, a in r.items():
                if v[j] != 0:
                    acc = acc + a * v[j]
            out.append(acc)
        return out

    def annihilates(self, v) -> bool:
        return all(x == 0 for x in self.apply(v))

    def evaluate(self, point) -> "ExactMatrix":
        """Substitute lambda = point in every rational-function entry."""
        rows = []
        for r in self.sparse:
            rows.append({j: (a.evaluate(point) if isinstance(a, RationalFunction) else a)
                         for j, a in r.items()})
        return ExactMatrix.from_sparse(rows, self.ncols)

    def permuted(self, row_perm, col_perm) -> "ExactMatrix":
        inv = {c: i for i, c in enumerate(col_perm)}
        rows = [{inv[j]: v for j, v in self.sparse[i].items()} for i in row_perm]
        return ExactMatrix.from_sparse(rows, self.ncols)

    def denominators(self):
        """Denominator polynomials of all rational-function entries."""
        seen = set()
        for r in self.sparse:
            for a in r.values():
                if isinstance(a, RationalFunction) and len(a.den) > 1:
                    seen.add(a.den)
        return sorted(seen)


# --- elimination kernels ------------------------------------------------------

def _int_row(row):
    den = 1
    for v in row.values():
        d = v.denominator if isinstance(v, Fraction) else 1
        den = den * d // gcd(den, d)
    out = {j: int(v * den) for j, v in row.items()}
    return _strip_int(out)


def _strip_int(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _poly_row(row):
    den = lpoly.ONE
    for v in row.values():
        d = v.den if isinstance(v, RationalFunction) else (Fraction(v).denominator,)
        if d != den:
            g = lpoly.gcd_poly(den, d)
            cd = gcd(lpoly.content(den), lpoly.content(d))
            den = lpoly.exact_div(lpoly.mul(den, d), lpoly.scale(g, cd))
    out = {}
    for j, v in row.items():
        if isinstance(v, RationalFunction):
            out[j] = lpoly.exact_div(lpoly.mul(v.num, den), v.den)
        else:
            q = Fraction(v)
            out[j] = lpoly.exact_div(lpoly.scale(den, q.numerator), (q.denominator,))
    return _strip_poly(out)


def _strip_poly(row):
    g = None
    for v in row.values():
        g = v if g is None else lpoly.gcd_poly(g, v)
        if len(g) == 1:
            break
    c = 0
    for v in row.values():
        c = gcd(c, lpoly.content(v))
        if c == 1:
            break
    if g is not None and len(g) > 1:
        g = lpoly.scale(lpoly.primitive(g), c)
        return {j: lpoly.exact_div(v, g) for j, v in row.items()}
    if c > 1:
        return {j: tuple(x // c for x in v) for j, v in row.items()}
    return row


class _IntKernel:
    def prepare(self, row):
        return _int_row(row)

    def size(self, v):
        return abs(v)

    def combine(self, target, pivot, col):
        a = pivot[col]
        b = target[col]
        g = gcd(a, b)
        a, b = a // g, b // g
        out = {}
        for j, v in target.items():
            out[j] = a * v
        for j, v in pivot.items():
            w = out.get(j, 0) - b * v
            if w:
                out[j] = w
            else:
                out.pop(j, None)
        out.pop(col, None)
        return _strip_int(out)

    def to_field(self, v):
        return Fraction(v)


class _PolyKernel:
    def prepare(self, row):
        return _poly_row(row)

    def size(self, v):
        return (len(v), max(abs(c) for c in v))

    def combine(self, target, pivot, col):
        a = pivot[col]
        b = target[col]
        g = lpoly.gcd_poly(a, b)
        if len(g) > 1:
            a, b = lpoly.exact_div(a, g), lpoly.exact_div(b, g)
        ca, cb = lpoly.content(a), lpoly.content(b)
        cg = gcd(ca, cb)
        if cg > 1:
            a, b = tuple(x // cg for x in a), tuple(x // cg for x in b)
        out = {}
        for j, v in target.items():
            out[j] = lpoly.mul(a, v)
        for j, v in pivot.items():
            w = lpoly.sub(out.get(j, ()), lpoly.mul(b, v))
            if w:
                out[j] = w
            else:
                out.pop(j, None)
        out.pop(col, None)
        return _strip_poly(out)

    def to_field(self, v):
        return RationalFunction(v, lpoly.ONE, True)


class _FieldKernel:
    def prepare(self, row):
        if not row:
            return row
        j0 = min(row)
        inv = 1 / row[j0] if not isinstance(row[j0], int) else Fraction(1, row[j0])
        return {j: v * inv for j, v in row.items()}

    def size(self, v):
        return 0

    def combine(self, target, pivot, col):
        f = target[col] / pivot[col]
        out = dict(target)
        for j, v in pivot.items():
            w = out.get(j, 0) - f * v
            if w != 0:
                out[j] = w
            else:
                out.pop(j, None)
        out.pop(col, None)
        return out

    def to_field(self, v):
        return normalize(v)


def _kernel_for(field):
    if field == "Q":
        return _IntKernel()
    if field == "Q(lambda)":
        return _PolyKernel()
    return _FieldKernel()


class Echelon(NamedTuple):
    """Forward-eliminated form: pivot rows in selection order."""
    pivots: list          # list of (column, row dict in kernel representation)
    ncols: int
    field: object
    kernel: object

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def pivot_columns(self):
        return [c for c, _ in self.pivots]


def echelon(M: ExactMatrix, col_order=None) -> Echelon:
    """Fraction-free forward elimination, taking pivot columns in ``col_order``.

    Columns earlier in ``col_order`` are preferred as pivots, so the free
    columns of the result are the latest ones the system allows.
    """
    kernel = _kernel_for(M.field)
    order = list(range(M.ncols)) if col_order is None else list(col_order)
    if sorted(order) != list(range(M.ncols)):
        raise ValueError("col_order must be a permutation of the columns")
    rows = [kernel.prepare(r) for r in M.sparse if r]
    pivots = []
    for col in order:
        cand = [i for i, r in enumerate(rows) if col in r]
        if not cand:
            continue
        best = min(cand, key=lambda i: (len(rows[i]), kernel.size(rows[i][col])))
        prow = rows[best]
        new_rows = []
        for i, r in enumerate(rows):
            if i == best:
                continue
            if col in r:
                r = kernel.combine(r, prow, col)
                if not r:
                    continue
            new_rows.append(r)
        rows = new_rows
        pivots.append((col, prow))
    return Echelon(pivots, M.ncols, M.field, kernel)


def nullspace_from_echelon(E: Echelon, free_order=None):
    """Nullspace basis: one vector per free column, that entry 1, other free 0."""
    to_field = E.kernel.to_field
    pivcols = set(E.pivot_columns)
    free = [c for c in range(E.ncols) if c not in pivcols]
    if free_order is not None:
        pos = {c: i for i, c in enumerate(free_order)}
        free.sort(key=lambda c: pos.get(c, len(pos) + c))
    frows = [(c, {j: to_field(v) for j, v in r.items()}) for c, r in E.pivots]
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for c, r in reversed(frows):
            acc = None
            for j, a in r.items():
                if j != c and j in v:
                    t = a * v[j]
                    acc = t if acc is None else acc + t
            if acc is not None and acc != 0:
                v[c] = -acc / r[c]
        zero = Fraction(0)
        basis.append([normalize(v.get(j, zero)) for j in range(E.ncols)])
    return basis


def rank(M: ExactMatrix, col_order=None) -> int:
    return echelon(M, col_order).rank


def nullspace(M: ExactMatrix, col_order=None, free_order=None):
    return nullspace_from_echelon(echelon(M, col_order), free_order)


def rank_nullspace(M: ExactMatrix, col_order=None):
    """Return ``(rank, nullspace basis)`` with rank + nullity = ncols checked."""
    E = echelon(M, col_order)
    ns = nullspace_from_echelon(E)
    if E.rank + len(ns) != M.ncols:
        raise AssertionError("rank-nullity violated")
    return E.rank, ns


def row_space_contains(M: ExactMatrix, rows) -> bool:
    """True when every given sparse row lies in the row space of ``M``."""
    extra = ExactMatrix.from_sparse(list(rows), M.ncols)
    return rank(M.stack(extra)) == rank(M)


def same_nullspace(A: ExactMatrix, B: ExactMatrix) -> bool:
    ra, rb = rank(A), rank(B)
    return ra == rb and rank(A.stack(B)) == ra


def nullspace_equals(big: ExactMatrix, basis, seed: int = 0) -> bool:
    """Decide whether ``basis`` spans the nullspace of ``big``, exactly.

    ``basis`` must be linearly independent.  Every basis vector is checked
    against every row of ``big``.  The rank of ``big`` is then bounded from
    below by its rank at one rational specialisation of lambda, which is
    cheap integer elimination.  If that bound reaches ``ncols - len(basis)``
    the nullspace can hold nothing more, so no symbolic elimination of
    ``big`` is needed.  A failed bound falls back to exact rank.
    """
    if not all(big.annihilates(v) for v in basis):
        return False
    target = big.ncols - len(basis)
    if big.field == "Q(lambda)":
        bad = [lpoly.primitive(d) for d in big.denominators()]
        for pt in itertools.islice(evaluation_points(seed), 8):
            if any(lpoly.evaluate(d, pt) == 0 for d in bad):
                continue
            try:
                if rank(big.evaluate(pt)) >= target:
                    return True
            except EvaluationPoleHit:
                continue
    return rank(big) == target


def vectors_rank(vectors, ncols: int | None = None) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    n = len(vectors[0]) if ncols is None else ncols
    return rank(ExactMatrix(vectors, n))


# --- generic rank over Q(lambda) ---------------------------------------------

class RankResult(NamedTuple):
    rank: int
    method: str  # "certified" or "probabilistic"


def _prime_list(n):
    out, p = [], 2
    while len(out) < n:
        if all(p % q for q in out if q * q <= p):
            out.append(p)
        p += 1
    return out


_PRIMES = _prime_list(60)


def evaluation_points(seed: int = 0):
    """Deterministic stream of well-spread rationals p/q with distinct primes."""
    rng = random.Random(seed)
    pairs = [(p, q) for p, q in itertools.permutations(_PRIMES, 2)]
    rng.shuffle(pairs)
    for p, q in pairs:
        yield Fraction(p if rng.random() < 0.5 else -p, q)


def generic_rank(M: ExactMatrix, mode: str = "certified", seed: int = 0,
                 avoid=()) -> RankResult:
    """Rank over Q(lambda).

    ``certified`` eliminates symbolically.  ``probabilistic`` takes the max
    rank over evaluation points that miss every entry pole and every root in
    ``avoid``; two independent draws of three points each must agree.
    """
    if M.field not in ("Q", "Q(lambda)"):
        raise MixedField(f"generic rank needs a Q(lambda) matrix, got {M.field}")
    if mode == "certified" or M.field == "Q":
        return RankResult(rank(M), "certified")
    if mode != "probabilistic":
        raise ValueError(f"unknown mode {mode!r}")
    bad = [lpoly.primitive(d) for d in M.denominators()]
    avoid = set(Fraction(a) for a in avoid if isinstance(a, (int, Fraction)))

    def draw(stream):
        best, used = -1, 0
        for pt in stream:
            if pt in avoid or any(lpoly.evaluate(d, pt) == 0 for d in bad):
                continue
            try:
                r = rank(M.evaluate(pt))
            except EvaluationPoleHit:
                continue
            best = max(best, r)
            used += 1
            if used == 3:
                return best
        raise EvaluationPoleHit("no valid evaluation points")

    r1 = draw(evaluation_points(seed))
    r2 = draw(evaluation_points(seed + 1))
    if r1 != r2:
        return RankResult(rank(M), "certified")
    return RankResult(r1, "probabilistic")


def as_field_vector(v):
    return [normalize(x) for x in v]


def dot(u, v):
    acc = Fraction(0)
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            acc = acc + a * b
    return acc


def solve_in_span(vectors, target):
    """Coefficients ``x`` with ``sum x_i vectors_i == target``, or None."""
    n = len(target)
    m = len(vectors)
    if m == 0:
        return None if any(t != 0 for t in target) else []
    # columns: the vectors, then the target; nullspace vector with last = -1
    rows = []
    for j in range(n):
        row = {i: vectors[i][j] for i in range(m) if vectors[i][j] != 0}
        if target[j] != 0:
            row[m] = target[j]
        rows.append(row)
    M = ExactMatrix.from_sparse(rows, m + 1)
    order = list(range(m + 1))
    E = echelon(M, order)
    if m in E.pivot_columns:
        return None
    ns = nullspace_from_echelon(E, free_order=[m] + list(range(m)))
    for v in ns:
        if v[m] != 0:
            return [normalize(-x / v[m]) for x in v[:m]]
    return None


__all__ = [
    "ExactMatrix",
    "Echelon",
    "RankResult",
    "echelon",
    "nullspace",
    "nullspace_from_echelon",
    "rank",
    "rank_nullspace",
    "generic_rank",
    "same_nullspace",
    "row_space_contains",
    "vectors_rank",
    "solve_in_span",
    "dot",
    "QuadraticScalar",
]
