"""Second (and first) differential cohomology with values in D_{lambda,mu}.

Three flavours are computed:

* ``relative``: cochains vanishing on sl(2) and sl(2)-invariant;
* ``absolute-vectP``: all homogeneous constant-coefficient cochains on
  polynomial vector fields;
* ``sl2``: cochains on sl(2) itself, on the weight-zero graded piece.

Every dimension is ``dim Z - rank B``.  Representatives are read off the
free coordinates of the cocycle space after the coboundaries have been
eliminated there, so the choice of basis is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from . import cochains as cc
from .cochains import (
    ABSOLUTE,
    RELATIVE,
    Cochain1,
    Cochain2,
    NonIntegerOffset,
    WeightProfile,
)
from .densmod import SL2, DiffOperator, VectorField, bracket, lie_operator
from .exactalg import (
    LAMBDA,
    ExactMatrix,
    MixedField,
    echelon,
    field_of,
    generic_rank,
    is_generic,
    lpoly,
    normalize,
    nullspace,
    nullspace_equals,
    nullspace_from_echelon,
    rank,
    scalar_from_json,
    scalar_str,
    scalar_to_json,
    small_roots,
    solve_in_span,
    vectors_rank,
)

ABSOLUTE_VECTP = "absolute-vectP"
SL2_MODE = "sl2"
RESULT_MODES = (RELATIVE, ABSOLUTE_VECTP, SL2_MODE)


class ZeroCohomology(ValueError):
    """A representative was requested for a profile whose cohomology vanishes."""


class NotACocycle(ValueError):
    """The cochain handed to nontriviality is not closed."""


def _chain_mode(mode: str) -> str:
    if mode in (ABSOLUTE, ABSOLUTE_VECTP):
        return ABSOLUTE
    if mode == RELATIVE:
        return RELATIVE
    raise ValueError(f"unknown mode {mode!r}")


def _result_mode(mode: str) -> str:
    return ABSOLUTE_VECTP if mode in (ABSOLUTE, ABSOLUTE_VECTP) else mode


def make_profile(lam, mu=None, k=None) -> WeightProfile:
    """Build a profile from (lambda, mu) or (lambda, k)."""
    lam = normalize(lam)
    if k is not None:
        if mu is not None and normalize(mu - lam) != k:
            raise NonIntegerOffset("mu - lambda disagrees with k")
        if not isinstance(k, int) or k < 0:
            raise NonIntegerOffset(f"k must be a non-negative integer, got {k!r}")
        return WeightProfile(lam, k)
    if mu is None:
        raise ValueError("give either mu or k")
    if field_of(lam) != field_of(normalize(mu)) and "Q" not in (field_of(lam), field_of(normalize(mu))):
        raise MixedField("lambda and mu live in different fields")
    return WeightProfile.from_weights(lam, normalize(mu))


# --- result record ---------------------------------------------------------------

@dataclass
class CohomologyResult:
    profile: WeightProfile
    mode: str
    dim: int
    basis: list
    cocycle_dim: int
    coboundary_dim: int
    certificate: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dim != self.cocycle_dim - self.coboundary_dim or self.dim < 0:
            raise AssertionError(
                f"inconsistent dimensions: {self.dim} != {self.cocycle_dim} - {self.coboundary_dim}")

    @property
    def k(self) -> int:
        return self.profile.k

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "k": self.k,
            "lambda": scalar_to_json(self.profile.lam),
            "dim": self.dim,
            "cocycle_dim": self.cocycle_dim,
            "coboundary_dim": self.coboundary_dim,
            "basis": [cc.cochain_to_json(c) for c in self.basis],
            "certificate": dict(self.certificate),
        }

    @classmethod
    def from_json(cls, obj) -> "CohomologyResult":
        profile = WeightProfile(scalar_from_json(obj["lambda"]), int(obj["k"]))
        return cls(
            profile=profile,
            mode=obj["mode"],
            dim=int(obj["dim"]),
            basis=[cc.cochain_from_json(b) for b in obj["basis"]],
            cocycle_dim=int(obj["cocycle_dim"]),
            coboundary_dim=int(obj["coboundary_dim"]),
            certificate=dict(obj["certificate"]),
        )

    def __eq__(self, other):
        if not isinstance(other, CohomologyResult):
            return NotImplemented
        return self.to_json() == other.to_json()


# --- invariant operators -----------------------------------------------------------

def invariant_bilinear(k: int, lam) -> list[Cochain2]:
    """sl(2)-invariant skew bilinear operators vanishing on sl(2)."""
    profile = WeightProfile(lam, k)
    M = cc.invariance_system(k, profile.lam)
    basis = nullspace(M, cc.pivot_order(k, RELATIVE), cc.preferred_free_order(k, RELATIVE))
    return [Cochain2.from_vector(profile, v, RELATIVE) for v in basis]


# --- the H^2 engine ------------------------------------------------------------------

def _h2(profile: WeightProfile, mode: str, oracle: bool, generic_mode: str, seed: int) -> CohomologyResult:
    k, lam = profile.k, profile.lam
    n = len(cc.unknowns(k, mode))
    Z = cc.cocycle_system(k, lam, mode)
    E = echelon(Z, cc.pivot_order(k, mode))
    zbasis = nullspace_from_echelon(E, cc.preferred_free_order(k, mode))
    if E.rank + len(zbasis) != n:
        raise AssertionError("rank-nullity violated on the cocycle system")
    pivots = set(E.pivot_columns)
    pref = cc.preferred_free_order(k, mode)
    free = [c for c in pref if c not in pivots]

    c1, bvecs = cc.coboundary_vectors(k, lam, mode)
    for v in bvecs:
        if not Z.annihilates(v):
            raise AssertionError("a coboundary failed the cocycle system")
    # coordinates of each coboundary in the cocycle basis are its free entries
    proj = [[v[c] for c in free] for v in bvecs]
    B = ExactMatrix(proj, len(free)) if proj else ExactMatrix([], len(free))
    EB = echelon(B)  # free columns are already in preference order
    killed = {free[c] for c in EB.pivot_columns}
    survivors = [c for c in free if c not in killed]
    zby_free = dict(zip(free, zbasis))
    basis = [Cochain2.from_vector(profile, zby_free[c], mode) for c in survivors]

    cert = {
        "z2_rank": E.rank,
        "b2_rank": EB.rank,
        "unknowns": n,
        "systems": ["cocycle_system"] + (["invariance_system"] if mode == RELATIVE else []),
        "oracle_checked": False,
        "generic_mode": "certified" if is_generic(lam) else "exact",
        "free_coordinates": [list(cc.unknowns(k, mode)[c]) for c in free],
        "representative_coordinates": [list(cc.unknowns(k, mode)[c]) for c in survivors],
    }
    if is_generic(lam) and generic_mode == "probabilistic":
        zr = generic_rank(Z, "probabilistic", seed)
        br = generic_rank(B, "probabilistic", seed) if proj else None
        if zr.rank != E.rank or (br is not None and br.rank != EB.rank):
            raise AssertionError("evaluation ranks disagree with symbolic ranks")
        # the symbolic ranks were computed anyway, so the label stays certified
        cert["evaluation_ranks_agree"] = True
    if oracle:
        O = cc.oracle_system(k, lam, mode)
        if not nullspace_equals(O, zbasis, seed):
            raise AssertionError(f"oracle disagrees with the closed-form system at k={k}")
        cert["oracle_checked"] = True
    return CohomologyResult(profile, _result_mode(mode), len(free) - EB.rank, basis,
                            len(free), EB.rank, cert)


def relative_h2(lam, mu=None, *, k=None, oracle: bool = False,
                generic_mode: str = "certified", seed: int = 0) -> CohomologyResult:
    """H^2 relative to sl(2); pass ``mu`` or ``k`` (``lam`` may be LAMBDA)."""
    return _h2(make_profile(lam, mu, k), RELATIVE, oracle, generic_mode, seed)


def absolute_h2_vectP(lam, mu=None, *, k=None, oracle: bool = False,
                      generic_mode: str = "certified", seed: int = 0) -> CohomologyResult:
    """H^2 of polynomial vector fields with homogeneous constant-coefficient cochains."""
    res = _h2(make_profile(lam, mu, k), ABSOLUTE, oracle, generic_mode, seed)
    if res.dim and res.k <= 6:
        res.basis = _family_representatives(res)
    return res


def compute(mode: str, lam, k: int, **kw) -> CohomologyResult:
    if mode == RELATIVE:
        return relative_h2(lam, k=k, **kw)
    if mode in (ABSOLUTE, ABSOLUTE_VECTP):
        return absolute_h2_vectP(lam, k=k, **kw)
    if mode == SL2_MODE:
        kw.pop("oracle", None)
        kw.pop("generic_mode", None)
        kw.pop("seed", None)
        return sl2_h2(lam, k=k)
    raise ValueError(f"unknown mode {mode!r}")


# --- explicit low-order families -------------------------------------------------------

def _family_tables(k: int, lam, alpha, beta, variant: str = "reference"):
    """Entry tables of the classical low-order absolute cochains.

    ``alpha``/``beta`` weight the two members; for k = 2, 3, 4 they play
    the role of the coefficients c_{1,2} and c_{1,3}.  The ``corrected``
    variant flips the sign of the k = 4 entry c_{1,4}; in the reference form
    that family fails the cocycle equations.
    """
    if variant not in ("reference", "corrected"):
        raise ValueError(f"unknown variant {variant!r}")
    l = lam
    if k == 1:
        return {(1, 2): alpha}
    if k == 2:
        return {(1, 2): alpha, (1, 3): beta}
    if k == 3:
        return {(1, 2): alpha, (1, 3): beta, (1, 4): l / 2 * (alpha - beta)}
    if k == 4:
        return {
            (1, 2): alpha,
            (1, 3): beta,
            (1, 4): (-1 if variant == "corrected" else 1)
            * Fraction(1, 2) * ((1 + 2 * l) * beta - (1 + 3 * l) * alpha),
            (1, 5): l / 10 * ((1 - 3 * l) * alpha + (1 + 2 * l) * beta),
        }
    if k == 5:
        return {
            (1, 2): 3 * alpha * (1 + l) * (1 + 2 * l),
            (1, 3): 2 * alpha * (1 + 3 * l + 6 * l * l),
            (1, 4): 3 * alpha * (1 + l) * (1 + 4 * l),
            (1, 6): -Fraction(1, 5) * alpha * l * (1 + 9 * l),
            (3, 4): beta,
        }
    if k == 6:
        return {
            (1, 2): alpha * (4 + 3 * l * (5 + 2 * l)),
            (1, 3): 5 * alpha * (2 + l * (4 + 3 * l)),
            (1, 4): 5 * alpha * (l * (3 + 4 * l) - 2),
            (1, 5): 5 * alpha * (2 + l * (4 + 3 * l)),
            (3, 4): beta,
            (1, 6): alpha * (4 + 15 * l + 6 * l * l),
            (3, 5): -l / 5 * beta,
        }
    raise ValueError("closed-form families exist for k = 1..6 only")


_SWITCH = {2: Fraction(-1, 2), 3: Fraction(-1), 4: Fraction(-3, 2)}


def low_order_family(k: int, lam, alpha=1, beta=0, variant: str = "reference") -> Cochain2:
    """The closed-form absolute 2-cochain of order k <= 6 with parameters (alpha, beta)."""
    profile = WeightProfile(lam, k)
    table = {u: normalize(v) for u, v in _family_tables(k, profile.lam, alpha, beta, variant).items()}
    return Cochain2(profile, table)


def low_order_members(k: int, lam, variant: str = "reference") -> list[Cochain2]:
    """The members of the closed-form family that should carry the class.

    k = 1: the single member.  k = 2, 3, 4: c_{1,2} = 1 at the switch weight,
    c_{1,3} = 1 elsewhere.  k = 5, 6: (alpha, beta) = (1, 0) and (0, 1).
    """
    if k == 1:
        return [low_order_family(1, lam)]
    if k in _SWITCH:
        at_switch = not is_generic(lam) and normalize(lam) == _SWITCH[k]
        ab = (1, 0) if at_switch else (0, 1)
        return [low_order_family(k, lam, *ab, variant=variant)]
    if k in (5, 6):
        return [low_order_family(k, lam, 1, 0, variant), low_order_family(k, lam, 0, 1, variant)]
    raise ValueError("closed-form families exist for k = 1..6 only")


def _family_representatives(res: CohomologyResult) -> list[Cochain2]:
    """Prefer closed-form members as representatives, completed by solver vectors.

    A member is kept only if it satisfies the cocycle equations and is
    independent of the coboundaries and of the members already kept.
    """
    try:
        members = low_order_members(res.k, res.profile.lam, variant="corrected")
    except ValueError:
        return res.basis
    k, lam = res.k, res.profile.lam
    Z = cc.cocycle_system(k, lam, ABSOLUTE)
    _, span = cc.coboundary_vectors(k, lam, ABSOLUTE)
    n = len(cc.unknowns(k, ABSOLUTE))
    span = list(span)
    base = vectors_rank(span, n)
    chosen, origin = [], []
    for cand, tag in [(m, "closed-form") for m in members] + [(b, "solver") for b in res.basis]:
        if len(chosen) == res.dim:
            break
        v = cand.vector(ABSOLUTE)
        if not Z.annihilates(v):
            continue
        r = vectors_rank(span + [v], n)
        if r > base:
            span.append(v)
            base = r
            chosen.append(cand)
            origin.append(tag)
    if len(chosen) != res.dim:
        raise AssertionError("could not assemble a basis of representatives")
    res.certificate["representatives"] = origin
    return chosen


# --- triviality ---------------------------------------------------------------------

def nontriviality(c: Cochain2, mode: str = RELATIVE):
    """``(True, None)`` if c is not a coboundary, else ``(False, B)`` with dB = c."""
    cmode = _chain_mode(mode)
    k, lam = c.profile.k, c.profile.lam
    v = c.vector(cmode)
    if not cc.cocycle_system(k, lam, cmode).annihilates(v):
        raise NotACocycle("cochain fails the cocycle equations")
    basis, bvecs = cc.coboundary_vectors(k, lam, cmode)
    coeffs = solve_in_span(bvecs, v)
    if coeffs is None:
        return True, None
    table = {}
    for a, B in zip(coeffs, basis):
        for i, g in B.table.items():
            table[i] = table.get(i, 0) + a * g
    witness = Cochain1(c.profile, table)
    if cc.delta1(witness).vector(cmode) != v:
        raise AssertionError("witness does not reproduce the cochain")
    return False, witness


def explicit_cocycle(mode: str, k: int, lam) -> list[Cochain2]:
    """Representatives of H^2: closed-form families for absolute k <= 6, else the solver's."""
    if mode == SL2_MODE:
        res = sl2_h2(lam, k=k)
    elif _chain_mode(mode) == RELATIVE:
        res = relative_h2(lam, k=k)
    else:
        res = absolute_h2_vectP(lam, k=k)
    if res.dim == 0:
        raise ZeroCohomology(f"H^2 vanishes for mode={mode}, k={k}, lambda={scalar_str(normalize(lam))}")
    return list(res.basis)


# --- sl(2) cohomology -----------------------------------------------------------------

# sl(2) generators e_{-1} = d/dx, e_0 = x d/dx, e_1 = x^2 d/dx have x d/dx-weights -1, 0, 1.
_SL2_WEIGHT = (-1, 0, 1)
_PAIRS = ((0, 1), (0, 2), (1, 2))


def _graded_basis(k: int, w: int, order: int):
    """Monomials x^p d^n of x d/dx-weight w (w = p - n + k), n <= order."""
    return [(w + n - k, n) for n in range(order + 1) if w + n - k >= 0]


def _op_from_monomial(lam, mu, p, n, c=1):
    coeffs = [()] * (n + 1)
    coeffs[n] = tuple([0] * p + [c])
    return DiffOperator(lam, mu, tuple(coeffs))


def _coords(A: DiffOperator, basis):
    out = []
    for p, n in basis:
        a = A.coeffs[n] if n < len(A.coeffs) else ()
        out.append(a[p] if p < len(a) else Fraction(0))
    return out


def _check_graded(A: DiffOperator, basis):
    idx = set(basis)
    for n, a in enumerate(A.coeffs):
        for p, v in enumerate(a):
            if v != 0 and (p, n) not in idx:
                raise AssertionError("operator left its graded piece")


def _sl2_complex(profile: WeightProfile, order: int):
    """Matrices of d^1: C^1 -> C^2 and d^2: C^2 -> C^3 on the weight-0 piece."""
    k, lam, mu = profile.k, profile.lam, profile.mu
    D = {w: _graded_basis(k, w, order) for w in (-1, 0, 1)}
    # C^1: e_a -> D_a ; C^2: (e_a, e_b) -> D_{a+b} ; C^3 -> D_0
    c1 = [(a, m) for a in range(3) for m in range(len(D[_SL2_WEIGHT[a]]))]
    c2 = [(pr, m) for pr in _PAIRS for m in range(len(D[_SL2_WEIGHT[pr[0]] + _SL2_WEIGHT[pr[1]]]))]
    br = {}
    for a in range(3):
        for b in range(3):
            br[(a, b)] = bracket(SL2[a], SL2[b])

    def as_sl2(X: VectorField):
        # express a bracket of generators back in the basis
        out = [Fraction(0)] * 3
        for i, cf in enumerate(X.coeffs):
            out[i] = cf
        return out

    def op(w, m, c=1):
        p, n = D[w][m]
        return _op_from_monomial(lam, mu, p, n, c)

    def value2(col_vec, a, b):
        """The 2-cochain col_vec evaluated on (e_a, e_b) as an operator."""
        if a == b:
            return DiffOperator(lam, mu, ())
        sign = 1
        if a > b:
            a, b, sign = b, a, -1
        w = _SL2_WEIGHT[a] + _SL2_WEIGHT[b]
        total = DiffOperator(lam, mu, ())
        for idx, ((pa, pb), m) in enumerate(c2):
            if (pa, pb) == (a, b) and col_vec[idx] != 0:
                total = total + op(w, m, col_vec[idx])
        return total.scale(sign)

    def value1(col_vec, a):
        total = DiffOperator(lam, mu, ())
        for idx, (aa, m) in enumerate(c1):
            if aa == a and col_vec[idx] != 0:
                total = total + op(_SL2_WEIGHT[a], m, col_vec[idx])
        return total

    def on_bracket(value, a, b, *rest):
        coeffs = as_sl2(br[(a, b)])
        total = DiffOperator(lam, mu, ())
        for t, cf in enumerate(coeffs):
            if cf != 0:
                total = total + value(t, *rest).scale(cf)
        return total

    # d^1 psi (x, y) = x.psi(y) - y.psi(x) - psi([x, y])
    d1_cols = []
    for idx in range(len(c1)):
        e = [0] * len(c1)
        e[idx] = 1
        col = []
        for (a, b) in _PAIRS:
            val = (lie_operator(SL2[a], value1(e, b)) - lie_operator(SL2[b], value1(e, a))
                   - on_bracket(lambda t: value1(e, t), a, b))
            basis = D[_SL2_WEIGHT[a] + _SL2_WEIGHT[b]]
            _check_graded(val, basis)
            col += _coords(val, basis)
        d1_cols.append(col)

    # d^2 w (x, y, z) = x.w(y,z) - y.w(x,z) + z.w(x,y) - w([x,y],z) + w([x,z],y) - w([y,z],x)
    d2_cols = []
    x, y, z = 0, 1, 2
    for idx in range(len(c2)):
        e = [0] * len(c2)
        e[idx] = 1
        val = (lie_operator(SL2[x], value2(e, y, z)) - lie_operator(SL2[y], value2(e, x, z))
               + lie_operator(SL2[z], value2(e, x, y))
               - on_bracket(lambda t: value2(e, t, z), x, y)
               + on_bracket(lambda t: value2(e, t, y), x, z)
               - on_bracket(lambda t: value2(e, t, x), y, z))
        _check_graded(val, D[0])
        d2_cols.append(_coords(val, D[0]))

    def transpose(cols, nrows):
        return [[col[r] for col in cols] for r in range(nrows)]

    n2 = len(c2)
    d1 = ExactMatrix(transpose(d1_cols, n2), len(c1)) if c1 else ExactMatrix([], 0)
    d2 = ExactMatrix(transpose(d2_cols, len(D[0])), n2)
    return d1, d2, c2, D, value2


def _cochain2_on_sl2(c: Cochain2, c2, D):
    """Coordinates of a Vect-cochain restricted to sl(2)."""
    vec = []
    for (a, b), m in c2:
        A = cc.cochain2_operator(c, SL2[a], SL2[b])
        p, n = D[_SL2_WEIGHT[a] + _SL2_WEIGHT[b]][m]
        coeff = A.coeffs[n] if n < len(A.coeffs) else ()
        vec.append(coeff[p] if p < len(coeff) else Fraction(0))
    return vec


def _sl2_dims(profile: WeightProfile, order: int):
    d1, d2, c2, D, _ = _sl2_complex(profile, order)
    r1 = rank(d1) if d1.ncols else 0
    r2 = rank(d2)
    z = len(c2) - r2
    return z - r1, z, r1, d1, d2, c2, D


def sl2_h2(lam, mu=None, *, k=None) -> CohomologyResult:
    """H^2(sl(2); D_{lambda,mu}) on the weight-zero graded piece.

    The complex is truncated at operator order k + 2 and the dimension is
    recomputed at order k + 4; the two must agree.  When the class is
    nonzero, the representative omega(X, Y) d^(k-1) is certified to be a
    cocycle outside the coboundaries and returned.
    """
    profile = make_profile(lam, mu, k)
    if profile.k < 1:
        raise NonIntegerOffset("sl(2) table needs mu - lambda >= 1")
    kk = profile.k
    dim, z, r1, d1, d2, c2, D = _sl2_dims(profile, kk + 2)
    dim_hi = _sl2_dims(profile, kk + 4)[0]
    if dim_hi != dim:
        raise AssertionError(f"order truncation unstable: {dim} vs {dim_hi}")
    cert = {"z2_rank": rank(d2), "b2_rank": r1, "order": kk + 2, "order_check": kk + 4,
            "oracle_checked": False, "generic_mode": "certified" if is_generic(profile.lam) else "exact"}
    basis = []
    if dim:
        omega = Cochain2(profile, {(1, 2): 1})
        v = _cochain2_on_sl2(omega, c2, D)
        closed = d2.annihilates(v)
        images = _columns(d1)
        outside = vectors_rank(images + [v], len(v)) > vectors_rank(images, len(v))
        cert["omega_closed"] = closed
        cert["omega_nontrivial"] = outside
        if closed and outside and dim == 1:
            basis = [omega]
    return CohomologyResult(profile, SL2_MODE, dim, basis, z, r1, cert)


def _columns(M: ExactMatrix):
    dense = M.dense()
    return [[dense[r][c] for r in range(M.nrows)] for c in range(M.ncols)]


# --- H^1 ---------------------------------------------------------------------------

def _delta0_table(k: int, lam, mu) -> dict:
    """gamma table of X -> L_X(d^k): symbol (s + mu p) s^k - (s + lam p)(p + s)^k."""
    from math import comb

    out = {}

    def add(i, v):
        if v != 0:
            out[i] = out.get(i, 0) + v

    add(0, 1)
    add(1, mu)
    for t in range(k + 1):
        add(t, -comb(k, t))
        add(t + 1, -lam * comb(k, t))
    return {i: normalize(v) for i, v in out.items() if v != 0}


def h1(mode: str, lam, mu=None, *, k=None) -> CohomologyResult:
    """First cohomology: closed homogeneous 1-cochains modulo d of a d^k."""
    if k is not None and k < 0:
        profile = WeightProfile(lam, 0)
        return CohomologyResult(profile, _result_mode(mode), 0, [], 0, 0, {"empty": True})
    profile = make_profile(lam, mu, k)
    cmode = _chain_mode(mode)
    kk = profile.k
    basis, dvecs = cc.coboundary_vectors(kk, profile.lam, cmode)
    m = len(basis)
    n2 = len(cc.unknowns(kk, cmode))
    if m:
        cols = ExactMatrix([[dvecs[j][r] for j in range(m)] for r in range(n2)], m) if n2 \
            else ExactMatrix([], m)
        zdim = m - (rank(cols) if n2 else 0)
    else:
        zdim = 0
    d0 = Cochain1(profile, _delta0_table(kk, profile.lam, profile.mu))
    if cmode == RELATIVE:
        # only sl(2)-invariant operators a d^k contribute, i.e. those whose image
        # vanishes on sl(2)
        b = 1 if d0.table and all(i >= 3 for i in d0.table) else 0
    else:
        b = 1 if d0.table else 0
    cert = {"c1_dim": m, "z1_dim": zdim, "b1_rank": b,
            "generic_mode": "certified" if is_generic(profile.lam) else "exact"}
    return CohomologyResult(profile, _result_mode(mode), zdim - b, [], zdim, b, cert)


# --- special weights ------------------------------------------------------------------

class LedgerEntry(NamedTuple):
    poly: tuple          # integer coefficients in lambda, constant term first
    roots: list
    tags: tuple


@dataclass
class SpecialWeightReport:
    k: int
    ledger: list
    unresolved: list

    def roots(self) -> list:
        """Distinct roots over all ledger polynomials, sorted by value."""
        out = []
        for e in self.ledger:
            for r in e.roots:
                if r not in out:
                    out.append(r)
        from .exactalg.roots import _real_value

        return sorted(out, key=_real_value)

    def tags_for(self, root) -> list:
        return sorted({t for e in self.ledger if root in e.roots for t in e.tags})


def _weight_polynomials(k: int):
    """(integer polynomial in lambda, tag) pairs whose roots are candidate jumps."""
    polys = [
        ((k - 1, 2), "coboundary vanishes: k-1+2*lambda"),
        ((k * k - 5 * k, 4 * k - 4, 4), "first coboundary coefficient: k^2+4(lambda-1)lambda+k(4lambda-5)"),
        ((k - 3, 2), "second coboundary coefficient: k-3+2*lambda"),
        ((k ** 3 - 21 * k * k + 98 * k, 76 + 6 * k * k - 84 * k, 12 * k - 84, 8),
         "second coboundary coefficient: cubic factor"),
        ((k - 2, 3), "absolute coboundary coefficient: k-2+3*lambda"),
        ((k * k - 14 * k + 24, 4 * k - 4, 4), "extra equation: lambda = (1-k +- sqrt(12k-23))/2"),
    ]
    if k == 1:
        polys.append(((0, 1), "order one: lambda"))
    if k == 2:
        polys.append(((1, 2), "order two switch: 1+2*lambda"))
    if k == 3:
        polys.append(((1, 1), "order three switch: 1+lambda"))
    if k == 4:
        polys.append(((3, 2), "order four switch: 3+2*lambda"))
    if k == 5:
        polys.append(((0, 8, 6, 1), "order five coboundary: lambda(2+lambda)(4+lambda)"))
    if k == 6:
        polys.append(((5, 2), "order six coboundary: 5+2*lambda"))
        polys.append(((3, 10, 2), "order six coboundary: 3+2*lambda(5+lambda)"))
    return polys


def find_special_weights(k: int) -> SpecialWeightReport:
    if k < 1:
        raise ValueError("k must be >= 1")
    merged: dict = {}
    unresolved = []
    for poly, tag in _weight_polynomials(k):
        p = lpoly.trim(tuple(poly))
        if not p or len(p) == 1:
            continue  # constant: never vanishes, or vanishes identically at this k
        rep = small_roots(p)
        key = lpoly.primitive(p)
        if key in merged:
            merged[key] = LedgerEntry(key, merged[key].roots, merged[key].tags + (tag,))
        else:
            merged[key] = LedgerEntry(key, list(rep.roots), (tag,))
        for u in rep.unresolved:
            if u not in unresolved:
                unresolved.append(u)
    return SpecialWeightReport(k, list(merged.values()), unresolved)
