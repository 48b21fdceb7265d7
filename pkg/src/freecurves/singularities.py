"""Zero-dimensional affine algebra in two variables u, v.

Affine polynomials are ordinary ``Poly`` objects using only the x and y
slots (u = x, v = y); the global grevlex key then orders u^2 > u*v > v^2.
A small Buchberger produces reduced Groebner bases, the quotient algebra
gives commuting multiplication matrices, and local multiplicities are the
dimensions of joint generalized eigenspaces.  Milnor and Tjurina numbers of
plane curve germs are read off from these.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

import flint
from gmpy2 import mpq

from . import linalg
from .errors import ChartUnavailable, InconclusiveProfile, NotReduced, PositiveDimensional
from .gradedlin import GradedIdeal, hilbert_profile
from .polys import Monomial, Poly, grevlex_key
from .scalars import Field, GaussQ

AffinePoint = Tuple[object, object]


# --- Groebner bases ----------------------------------------------------------------

def _divides(a: Monomial, b: Monomial) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return (max(a[0], b[0]), max(a[1], b[1]), 0)


def _quo(b: Monomial, a: Monomial) -> Monomial:
    return (b[0] - a[0], b[1] - a[1], 0)


def _check_affine(p: Poly):
    if any(m[2] for m in p.terms):
        raise ValueError("affine polynomials use the variables u=x and v=y only")


def _monic(p: Poly) -> Poly:
    return p.monic() if not p.is_zero() else p


def normal_form(p: Poly, G: Sequence[Poly]) -> Poly:
    """Full reduction of p by the (monic) list G."""
    field = p.field
    rem: Dict[Monomial, object] = {}
    cur = p
    lts = [(g.leading_term()[0], g) for g in G]
    while not cur.is_zero():
        m, c = cur.leading_term()
        for lm, g in lts:
            if _divides(lm, m):
                cur = cur - g.mul_term(_quo(m, lm), c)
                break
        else:
            rem[m] = c
            cur = cur - Poly.monomial(field, m, c)
    return Poly(field, rem)


def _spoly(f: Poly, g: Poly) -> Poly:
    mf, cf = f.leading_term()
    mg, cg = g.leading_term()
    L = _lcm(mf, mg)
    field = f.field
    return f.mul_term(_quo(L, mf), field.inv(cf)) - g.mul_term(_quo(L, mg), field.inv(cg))


def buchberger2(gens: Sequence[Poly]) -> List[Poly]:
    """Reduced grevlex Groebner basis of an ideal of K[u, v].

    Pairs are processed by the sugar strategy (lowest sugar degree first,
    ties by lcm in grevlex then by index) and pairs with coprime leading
    monomials are skipped.
    """
    polys = [g for g in gens if not g.is_zero()]
    if not polys:
        raise ValueError("buchberger2 needs a nonzero generator")
    for g in polys:
        _check_affine(g)
    G: List[Poly] = []
    sugar: List[int] = []
    pairs: List[Tuple[int, int, int]] = []

    def add(h: Poly, s: int):
        h = _monic(h)
        k = len(G)
        G.append(h)
        sugar.append(s)
        mh = h.leading_term()[0]
        for i in range(k):
            mi = G[i].leading_term()[0]
            L = _lcm(mi, mh)
            ps = max(sugar[i] + sum(_quo(L, mi)), s + sum(_quo(L, mh)))
            pairs.append((ps, i, k))

    for g in polys:
        h = normal_form(g, G)
        if not h.is_zero():
            add(h, g.total_degree())
    while pairs:
        pairs.sort(key=lambda t: (t[0], grevlex_key(_lcm(G[t[1]].leading_term()[0], G[t[2]].leading_term()[0])), t[1], t[2]))
        s, i, j = pairs.pop(0)
        gi, gj = G[i], G[j]
        mi, mj = gi.leading_term()[0], gj.leading_term()[0]
        if mi[0] * mj[0] == 0 and mi[1] * mj[1] == 0:
            # coprime leading monomials: S-polynomial reduces to zero
            continue
        h = normal_form(_spoly(gi, gj), G)
        if not h.is_zero():
            add(h, s)
    # minimalize and interreduce
    basis = sorted(G, key=lambda p: grevlex_key(p.leading_term()[0]))
    minimal: List[Poly] = []
    for p in basis:
        lm = p.leading_term()[0]
        if not any(_divides(q.leading_term()[0], lm) for q in minimal):
            minimal.append(p)
    reduced = []
    for k, p in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        lm, c = p.leading_term()
        tail = normal_form(p - Poly.monomial(p.field, lm, c), others)
        reduced.append(_monic(Poly.monomial(p.field, lm, c) + tail))
    reduced.sort(key=lambda p: grevlex_key(p.leading_term()[0]), reverse=True)
    return reduced


def is_groebner(G: Sequence[Poly]) -> bool:
    """Buchberger's S-polynomial criterion."""
    return all(normal_form(_spoly(G[i], G[j]), G).is_zero()
               for i in range(len(G)) for j in range(i + 1, len(G)))


# --- quotient algebra -------------------------------------------------------------

@dataclass
class QuotientAlgebra:
    field: Field
    gb: List[Poly]
    basis: List[Monomial]
    Mu: List[list]
    Mv: List[list]
    chart: str = "affine"

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coords(self, p: Poly) -> list:
        r = normal_form(p, self.gb)
        idx = {m: k for k, m in enumerate(self.basis)}
        v = [self.field.zero] * len(self.basis)
        for m, c in r.terms.items():
            v[idx[m]] = c
        return v


def quotient_algebra(gb: Sequence[Poly], chart: str = "affine") -> QuotientAlgebra:
    field = gb[0].field
    lms = [g.leading_term()[0] for g in gb]
    if any(m == (0, 0, 0) for m in lms):
        return QuotientAlgebra(field, list(gb), [], [], [], chart)
    pu = [m[0] for m in lms if m[1] == 0]
    pv = [m[1] for m in lms if m[0] == 0]
    if not pu or not pv:
        raise PositiveDimensional("the staircase is unbounded; the quotient is infinite-dimensional")
    basis = [(a, b, 0) for a in range(min(pu)) for b in range(min(pv))
             if not any(_divides(m, (a, b, 0)) for m in lms)]
    basis.sort(key=grevlex_key)
    Q = QuotientAlgebra(field, list(gb), basis, [], [], chart)
    u = Poly.var(field, "x")
    v = Poly.var(field, "y")
    cols_u = [Q.coords(u * Poly.monomial(field, m)) for m in basis]
    cols_v = [Q.coords(v * Poly.monomial(field, m)) for m in basis]
    Q.Mu = [list(r) for r in zip(*cols_u)] if basis else []
    Q.Mv = [list(r) for r in zip(*cols_v)] if basis else []
    if basis and linalg.mat_mul(Q.Mu, Q.Mv, field) != linalg.mat_mul(Q.Mv, Q.Mu, field):
        raise AssertionError("multiplication matrices do not commute")
    return Q


def quotient_of(gens: Sequence[Poly], chart: str = "affine") -> QuotientAlgebra:
    return quotient_algebra(buchberger2(gens), chart)


# --- characteristic polynomials and roots ------------------------------------------

def _charpoly(M: List[list], field: Field) -> list:
    """Coefficients (constant first) of det(t*I - M)."""
    n = len(M)
    if n == 0:
        return [field.one]
    if field.kind == "Q":
        cp = flint.fmpq_mat(n, n, [flint.fmpq(int(mpq(v).numerator), int(mpq(v).denominator))
                                   for r in M for v in r]).charpoly()
        return [mpq(int(c.p), int(c.q)) for c in cp.coeffs()]
    if field.kind == "Fp":
        cp = flint.nmod_mat(n, n, [int(v) for r in M for v in r], field.p).charpoly()
        return [int(c) for c in cp.coeffs()]
    # Faddeev-LeVerrier (characteristic zero):
    # M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
    coeffs = [field.zero] * (n + 1)
    coeffs[n] = field.one
    Mk = [[field.zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = linalg.mat_mul(M, Mk, field)
        Mk = [[field.reduce(v + coeffs[n - k + 1]) if i == j else v for j, v in enumerate(r)]
              for i, r in enumerate(AM)]
        AMk = linalg.mat_mul(M, Mk, field)
        tr = field.zero
        for i in range(n):
            tr = tr + AMk[i][i]
        coeffs[n - k] = field.reduce(-tr * field.inv(field.coerce(k)))
    return coeffs


def _eval_upoly(c: list, t, field: Field):
    acc = field.zero
    for a in reversed(c):
        acc = field.reduce(acc * t + a)
    return acc


def roots_in_field(c: list, field: Field) -> Tuple[List[object], List[int]]:
    """Distinct roots of a univariate polynomial lying in the field, plus
    the degrees of the remaining irreducible factors (with multiplicity)."""
    while len(c) > 1 and field.is_zero(c[-1]):
        c = c[:-1]
    if len(c) <= 1:
        return [], []
    if field.kind == "Q":
        _, facs = flint.fmpq_poly([flint.fmpq(int(v.numerator), int(v.denominator)) for v in c]).factor()
        roots, rest = [], []
        for fac, e in facs:
            k = fac.coeffs()
            if len(k) == 2:
                roots.append(mpq(-int(k[0].p) * int(k[1].q), int(k[0].q) * int(k[1].p)))
            else:
                rest.extend([fac.degree()] * e)
        return sorted(roots), rest
    if field.kind == "Fp":
        _, facs = flint.nmod_poly([int(v) for v in c], field.p).factor()
        roots, rest = [], []
        for fac, e in facs:
            k = [int(v) for v in fac.coeffs()]
            if len(k) == 2:
                roots.append((-k[0] * pow(k[1], -1, field.p)) % field.p)
            else:
                rest.extend([fac.degree()] * e)
        return sorted(roots), rest
    return _gaussian_roots(c, field)


def _gaussian_roots(c: list, field: Field):
    """Gaussian-rational roots: every such root s+ti is a root of the rational
    polynomial P * conj(P), whose factors are then linear or quadratic."""
    conj = [v.conjugate() for v in c]
    prod = [GaussQ(0)] * (2 * len(c) - 1)
    for i, a in enumerate(c):
        for j, b in enumerate(conj):
            prod[i + j] = prod[i + j] + a * b
    real = [p.re for p in prod]
    _, facs = flint.fmpq_poly([flint.fmpq(int(v.numerator), int(v.denominator)) for v in real]).factor()
    cands = []
    for fac, _ in facs:
        k = [mpq(int(v.p), int(v.q)) for v in fac.coeffs()]
        if len(k) == 2:
            cands.append(GaussQ(-k[0] / k[1]))
        elif len(k) == 3:
            # a t^2 + b t + c with negative discriminant -> s +- t i
            cc, b, a = k
            disc = b * b - 4 * a * cc
            if disc < 0:
                r = _rational_sqrt(-disc)
                if r is not None:
                    s = -b / (2 * a)
                    t = r / (2 * a)
                    cands.extend([GaussQ(s, t), GaussQ(s, -t)])
    roots = []
    for r in cands:
        if field.is_zero(_eval_upoly(c, r, field)) and r not in roots:
            roots.append(r)
    # residual degrees: strip the roots found (with multiplicity) by division
    rest_deg = len(c) - 1
    cur = list(c)
    for r in roots:
        while True:
            q, rem = _synthetic_div(cur, r, field)
            if not field.is_zero(rem):
                break
            cur = q
            rest_deg -= 1
    rest = [rest_deg] if rest_deg else []
    roots.sort(key=lambda g: (g.re, g.im))
    return roots, rest


def _synthetic_div(c: list, r, field: Field):
    n = len(c) - 1
    q = [field.zero] * n
    acc = field.zero
    for k in range(n, 0, -1):
        acc = field.reduce(acc * r + c[k])
        q[k - 1] = acc
    rem = field.reduce(acc * r + c[0])
    return q, rem


def _rational_sqrt(q: mpq):
    from gmpy2 import is_square, isqrt
    n, d = int(q.numerator), int(q.denominator)
    if is_square(n) and is_square(d):
        return mpq(int(isqrt(n)), int(isqrt(d)))
    return None


# --- points and multiplicities ------------------------------------------------------

def _gen_kernel(M: List[list], alpha, k: int, field: Field) -> List[list]:
    """Basis (as column vectors) of ker (M - alpha I)^k."""
    A = linalg.mat_pow(linalg.mat_sub_scalar(M, alpha, field), k, field)
    return linalg.nullspace(A, len(M), field)


def local_multiplicity(Q: QuotientAlgebra, p: AffinePoint) -> int:
    """dim of ker (Mu - pu)^D  intersected with  ker (Mv - pv)^D."""
    D = Q.dimension
    if D == 0:
        return 0
    field = Q.field
    A = linalg.mat_pow(linalg.mat_sub_scalar(Q.Mu, field.coerce(p[0]), field), D, field)
    B = linalg.mat_pow(linalg.mat_sub_scalar(Q.Mv, field.coerce(p[1]), field), D, field)
    return D - linalg.rank(A + B, D, field)


@dataclass
class PointSolution:
    points: List[Tuple[AffinePoint, int]]  # (point, multiplicity)
    residual: List[dict]  # {"u_value" or "factor_degrees": ..., "dimension": k}
    dimension: int

    @property
    def residual_dimension(self) -> int:
        return sum(r["dimension"] for r in self.residual)


def solve_points(Q: QuotientAlgebra) -> PointSolution:
    """Field-rational points of the quotient with multiplicities.

    Eigenvalues of Mu are found from its characteristic polynomial; on each
    generalized eigenspace Mv is restricted and its eigenvalues found the same
    way.  Everything not accounted for by rational points is reported as a
    residual block (its dimension and the degrees of the irreducible factors).
    """
    D = Q.dimension
    field = Q.field
    if D == 0:
        return PointSolution([], [], 0)
    roots_u, rest_u = roots_in_field(_charpoly(Q.Mu, field), field)
    points, residual = [], []
    if rest_u:
        residual.append({"coordinate": "u", "factor_degrees": rest_u,
                         "dimension": D - sum(len(_gen_kernel(Q.Mu, a, D, field)) for a in roots_u)})
    for a in roots_u:
        W = _gen_kernel(Q.Mu, a, D, field)  # list of vectors
        k = len(W)
        C = _restrict(Q.Mv, W, field)
        roots_v, rest_v = roots_in_field(_charpoly(C, field), field)
        used = 0
        for b in roots_v:
            mult = len(_gen_kernel(C, b, k, field))
            if mult:
                points.append(((a, b), mult))
                used += mult
        if used < k:
            residual.append({"coordinate": "v", "u_value": field.format(a),
                             "factor_degrees": rest_v, "dimension": k - used})
    for (pt, _) in points:
        for g in Q.gb:
            if not field.is_zero(g.evaluate((pt[0], pt[1], 0))):
                raise AssertionError("solved point does not satisfy the ideal")
    return PointSolution(points, residual, D)


def _restrict(M: List[list], W: List[list], field: Field) -> List[list]:
    """Matrix C of M on span(W): M w_j = sum_i C[i][j] w_i."""
    k = len(W)
    cols = [list(c) for c in zip(*W)]  # D x k matrix with the w_j as columns
    C_cols = []
    for w in W:
        Mw = linalg.mat_vec(M, w, field)
        x = linalg.solve(cols, k, Mw, field)
        if x is None:
            raise AssertionError("subspace is not invariant")
        C_cols.append(x)
    return [list(r) for r in zip(*C_cols)]


# --- charts and projective points ------------------------------------------------------

CHARTS = ("z", "y", "x")


def chart_of(point: Sequence, field: Field) -> str:
    """First nonzero coordinate in the order z, y, x."""
    for name, idx in (("z", 2), ("y", 1), ("x", 0)):
        if not field.is_zero(field.coerce(point[idx])):
            return name
    raise ChartUnavailable("the zero vector is not a projective point")


def dehomogenize(f: Poly, chart: str) -> Poly:
    """Set the chart coordinate to 1; the other two become (u, v) in order."""
    field = f.field
    u = Poly.var(field, "x")
    v = Poly.var(field, "y")
    one = Poly.const(field, 1)
    images = {"z": [u, v, one], "y": [u, one, v], "x": [one, u, v]}[chart]
    return f.substitute(images)


def affine_image(point: Sequence, chart: str, field: Field) -> AffinePoint:
    idx = {"z": 2, "y": 1, "x": 0}[chart]
    c = field.inv(field.coerce(point[idx]))
    others = [i for i in range(3) if i != idx]
    return tuple(field.reduce(field.coerce(point[i]) * c) for i in others)


def normalize_point(point: Sequence, field: Field) -> tuple:
    """Scale so the last nonzero coordinate (in order z, y, x) is 1."""
    ch = chart_of(point, field)
    idx = {"z": 2, "y": 1, "x": 0}[ch]
    c = field.inv(field.coerce(point[idx]))
    return tuple(field.reduce(field.coerce(v) * c) for v in point)


@dataclass
class ProjectiveSolution:
    points: List[Tuple[tuple, int, str]]  # (normalized point, chart multiplicity, chart)
    residual: List[dict] = dc_field(default_factory=list)

    @property
    def all_rational(self) -> bool:
        return not self.residual

    def to_json(self, field: Field) -> dict:
        return {"points": [{"point": [field.format(c) for c in p], "multiplicity": m, "chart": ch}
                           for p, m, ch in self.points],
                "residual": self.residual}


def solve_projective(gens: Sequence[Poly]) -> ProjectiveSolution:
    """Rational points of V(gens) for homogeneous gens with finite zero set.

    Charts are visited as z = 1, then the line z = 0 with y = 1, then the
    point (1:0:0).  Multiplicities are those of the chart algebra (the scheme
    multiplicity for the z = 1 chart, the multiplicity along the line at
    infinity otherwise).
    """
    field = gens[0].field
    out = ProjectiveSolution([])
    aff = [dehomogenize(g, "z") for g in gens]
    Q = quotient_of(aff, "z")
    sol = solve_points(Q)
    for (a, b), m in sol.points:
        out.points.append(((a, b, field.one), m, "z"))
    if sol.residual:
        out.residual.append({"chart": "z", "blocks": sol.residual})
    # line z = 0, y = 1: polynomials in u only, v forced to 0
    v = Poly.var(field, "y")
    at_inf = [g.substitute([Poly.var(field, "x"), Poly.const(field, 1), Poly(field)]) for g in gens]
    gens_inf = [p for p in at_inf if not p.is_zero()] + [v]
    Q2 = quotient_of(gens_inf, "y")
    sol2 = solve_points(Q2)
    for (a, _), m in sol2.points:
        out.points.append(((a, field.one, field.zero), m, "y"))
    if sol2.residual:
        out.residual.append({"chart": "y", "blocks": sol2.residual})
    if all(field.is_zero(g.evaluate((1, 0, 0))) for g in gens):
        out.points.append(((field.one, field.zero, field.zero), 1, "x"))
    return out


# --- Milnor and Tjurina numbers --------------------------------------------------------

@dataclass
class LocalInvariants:
    point: tuple
    chart: str
    mu: int
    tau: int
    method: str = "global-quotient"

    @property
    def quasihomogeneous(self) -> bool:
        return self.mu == self.tau

    def to_json(self, field: Field) -> dict:
        return {"point": [field.format(c) for c in self.point], "chart": self.chart,
                "mu": self.mu, "tau": self.tau, "quasihomogeneous": self.quasihomogeneous}


def _local_dimension(gens: List[Poly], p: AffinePoint, max_power: int = 64) -> Tuple[int, str]:
    """dim of the local algebra of <gens> at p.

    First the global quotient; if that is infinite-dimensional (a critical
    curve elsewhere in the chart), the ideal is truncated by powers of the
    maximal ideal at p until the colength stabilizes, which by Nakayama
    happens exactly once the power lies in the localized ideal.
    """
    try:
        Q = quotient_of(gens)
        return local_multiplicity(Q, p), "global-quotient"
    except PositiveDimensional:
        pass
    field = gens[0].field
    u = Poly.var(field, "x") - Poly.const(field, p[0])
    v = Poly.var(field, "y") - Poly.const(field, p[1])
    prev = None
    for K in range(1, max_power + 1):
        mK = [u ** i * v ** (K - i) for i in range(K + 1)]
        dim = quotient_of(list(gens) + mK).dimension
        if dim == prev:
            return dim, "maximal-ideal-truncation"
        prev = dim
    raise PositiveDimensional("the singularity is not isolated")


def _germ(f: Poly, point: Sequence):
    field = f.field
    ch = chart_of(point, field)
    h = dehomogenize(f, ch)
    p = affine_image(point, ch, field)
    return h, p, ch


def milnor_at(f: Poly, point: Sequence) -> int:
    h, p, _ = _germ(f, point)
    return _local_dimension([h.partial("x"), h.partial("y")], p)[0]


def tjurina_at(f: Poly, point: Sequence) -> int:
    h, p, _ = _germ(f, point)
    return _local_dimension([h, h.partial("x"), h.partial("y")], p)[0]


def local_invariants(f: Poly, point: Sequence) -> LocalInvariants:
    field = f.field
    h, p, ch = _germ(f, point)
    if not field.is_zero(h.evaluate((p[0], p[1], 0))):
        raise ValueError("the point is not on the curve")
    mu, m1 = _local_dimension([h.partial("x"), h.partial("y")], p)
    tau, m2 = _local_dimension([h, h.partial("x"), h.partial("y")], p)
    method = m1 if m1 == m2 else f"{m1}/{m2}"
    return LocalInvariants(normalize_point(point, field), ch, mu, tau, method)


def singular_points(f: Poly) -> ProjectiveSolution:
    """Rational singular points of V(f): common zeros of the three partials
    (f itself follows by Euler's formula when char does not divide deg f)."""
    return solve_projective(list(f.gradient()))


def tjurina_total(f: Poly, t_max: int | None = None, check_reduced: bool = True) -> int:
    """Stable Hilbert value of R / <f_x, f_y, f_z>."""
    if check_reduced:
        from .derivations import is_reduced
        red = is_reduced(f)
        if not red:
            raise NotReduced(red.detail)
    prof = hilbert_profile(GradedIdeal(f.gradient()), t_max)
    if not prof.is_finite:
        raise InconclusiveProfile(f"Jacobian profile {prof.status}: {prof.values}")
    return prof.stable_value


@dataclass
class TjurinaReport:
    total: int
    local: List[LocalInvariants]
    all_rational: bool
    residual: List[dict]

    @property
    def local_sum(self) -> int:
        return sum(li.tau for li in self.local)

    @property
    def agree(self) -> Optional[bool]:
        return self.total == self.local_sum if self.all_rational else None

    def to_json(self, field: Field) -> dict:
        return {"tjurina_total": self.total, "local_sum": self.local_sum,
                "all_points_rational": self.all_rational, "agree": self.agree,
                "points": [li.to_json(field) for li in self.local], "residual": self.residual}


def tjurina_report(f: Poly, t_max: int | None = None) -> TjurinaReport:
    """Global and local Tjurina numbers side by side."""
    total = tjurina_total(f, t_max)
    sol = singular_points(f)
    local = [local_invariants(f, p) for p, _, _ in sol.points]
    return TjurinaReport(total, local, sol.all_rational, sol.residual)
