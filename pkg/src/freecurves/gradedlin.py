"""Degree-by-degree linear algebra in R = K[x, y, z].

Every graded question (Hilbert functions, membership in a degree piece,
syzygies of a fixed degree) is reduced to an exact linear system over the
monomial basis of one degree.  No Groebner bases are involved.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .errors import NonHomogeneousInput
from .polys import Monomial, Poly, common_field
from .scalars import Field


def monomial_basis(e: int) -> List[Monomial]:
    """All monomials of degree e, largest first in grevlex."""
    if e < 0:
        return []
    return [(e - b - c, b, c) for c in range(e + 1) for b in range(e - c + 1)]


def monomial_index(m: Monomial) -> int:
    """Position of m inside ``monomial_basis(deg m)``."""
    a, b, c = m
    t = a + b + c
    return c * (t + 1) - c * (c - 1) // 2 + b


def dim_R(t: int) -> int:
    return comb(t + 2, 2) if t >= 0 else 0


def poly_vector(p: Poly, t: int) -> list:
    """Dense coefficient vector of a homogeneous p of degree t."""
    v = [p.field.zero] * dim_R(t)
    for m, c in p.terms.items():
        v[monomial_index(m)] = c
    return v


def vector_poly(v: Sequence, t: int, field: Field) -> Poly:
    basis = monomial_basis(t)
    return Poly(field, {basis[i]: c for i, c in enumerate(v) if not field.is_zero(c)})


def _shifted_rows(gens: Sequence[Poly], t: int) -> Tuple[list, list]:
    """Rows m*g for every generator g of degree <= t and monomial m of degree t - deg g.

    Returns (rows, labels) where labels[k] = (generator index, multiplier monomial).
    """
    n = dim_R(t)
    rows, labels = [], []
    for gi, g in enumerate(gens):
        s = t - g.degree
        if s < 0:
            continue
        zero = g.field.zero
        items = list(g.terms.items())
        for m in monomial_basis(s):
            row = [zero] * n
            for (a, b, c), coef in items:
                row[monomial_index((a + m[0], b + m[1], c + m[2]))] = coef
            rows.append(row)
            labels.append((gi, m))
    return rows, labels


def _transpose(rows: list, ncols: int) -> list:
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


class GradedIdeal:
    """Ideal given by an ordered list of homogeneous generators.

    Zero generators are dropped (and recorded), since they do not change the
    ideal; certificates index the surviving generators.
    """

    def __init__(self, generators: Sequence[Poly], field: Field | None = None):
        gens = list(generators)
        if field is None:
            field = common_field(gens)
        for g in gens:
            if g.field is not field:
                raise ValueError("generators over different fields")
            if not g.is_zero() and not g.is_homogeneous():
                raise NonHomogeneousInput(f"generator {g} is not homogeneous")
        self.field = field
        self.generators: Tuple[Poly, ...] = tuple(g for g in gens if not g.is_zero())
        self.dropped_zero = len(gens) - len(self.generators)
        self.degrees = tuple(g.degree for g in self.generators)

    def __repr__(self):
        return f"GradedIdeal({', '.join(map(str, self.generators))})"

    def spanning_rows(self, t: int):
        return _shifted_rows(self.generators, t)

    def dim(self, t: int, engine: str = "auto") -> int:
        rows, _ = self.spanning_rows(t)
        return linalg.rank(rows, dim_R(t), self.field, engine) if rows else 0

    def hilbert(self, t: int, engine: str = "auto") -> int:
        return dim_R(t) - self.dim(t, engine)


def degree_piece(I: GradedIdeal, t: int, engine: str = "auto") -> List[Poly]:
    """Row-reduced basis of I_t."""
    rows, _ = I.spanning_rows(t)
    if not rows:
        return []
    R = linalg.rref(rows, dim_R(t), I.field, engine)
    return [vector_poly(r, t, I.field) for r in R.rows]


def same_degree_piece(I: GradedIdeal, J: GradedIdeal, t: int) -> bool:
    """I_t == J_t as subspaces of R_t (compare reduced echelon forms)."""
    return degree_piece(I, t) == degree_piece(J, t)


@dataclass
class HilbertProfile:
    values: List[int]
    t_max: int
    stable_value: Optional[int] = None
    stabilized_at: Optional[int] = None
    status: str = "inconclusive"  # finite | positive-dimensional | inconclusive

    @property
    def is_finite(self) -> bool:
        return self.status == "finite"

    @property
    def length(self) -> Optional[int]:
        return self.stable_value

    def to_json(self) -> dict:
        return {"values": list(self.values), "stable_value": self.stable_value,
                "stabilized_at": self.stabilized_at, "t_max": self.t_max,
                "status": self.status}

    @classmethod
    def from_json(cls, d: dict) -> "HilbertProfile":
        return cls(list(d["values"]), d["t_max"], d.get("stable_value"),
                   d.get("stabilized_at"), d.get("status", "inconclusive"))


def auto_tmax(degrees: Sequence[int]) -> int:
    if not degrees:
        return 6
    return max(sum(degrees), 3 * max(degrees)) + 3


def classify_profile(values: List[int], t_max: int) -> HilbertProfile:
    prof = HilbertProfile(list(values), t_max)
    if len(values) >= 4:
        tail = values[-4:]
        if len(set(tail)) == 1 and values[-1] - values[-2] == 0:
            s = len(values) - 1
            while s > 0 and values[s - 1] == values[-1]:
                s -= 1
            prof.stable_value, prof.stabilized_at, prof.status = values[-1], s, "finite"
        elif all(tail[k + 1] > tail[k] for k in range(3)):
            prof.status = "positive-dimensional"
    return prof


def hilbert_profile(I: GradedIdeal, t_max: int | None = None, engine: str = "auto") -> HilbertProfile:
    """HF(R/I, t) for t = 0..t_max and the stabilization verdict.

    The scheme is declared finite when the last four values agree; four
    strictly increasing final values mean positive-dimensional; anything else
    is inconclusive.
    """
    if t_max is None:
        t_max = auto_tmax(I.degrees)
    values = []
    lo = min(I.degrees) if I.degrees else t_max + 1
    for t in range(t_max + 1):
        values.append(dim_R(t) if t < lo else I.hilbert(t, engine))
    return classify_profile(values, t_max)


def _solve_columns(cols: list, n_rows: int, rhs: Sequence, field: Field):
    rows = _transpose(cols, n_rows)
    return linalg.solve(rows, len(cols), rhs, field)


def membership_certificate(F: Poly, I: GradedIdeal) -> Optional[List[Poly]]:
    """Coefficients Q_i with sum Q_i g_i == F (Q_i of degree N - deg g_i), or None.

    None means F is not in the degree-N piece spanned by the generators.
    The identity is re-verified by expansion before returning.
    """
    if not F.is_homogeneous():
        raise NonHomogeneousInput(f"{F} is not homogeneous")
    field = I.field
    N = F.degree
    if F.is_zero():
        return [Poly(field) for _ in I.generators]
    cols, labels = _shifted_rows(I.generators, N)
    if not cols:
        return None
    x = _solve_columns(cols, dim_R(N), poly_vector(F, N), field)
    if x is None:
        return None
    Q = [dict() for _ in I.generators]
    for val, (gi, m) in zip(x, labels):
        if not field.is_zero(val):
            Q[gi][m] = val
    Qp = [Poly(field, q) for q in Q]
    check = Poly(field)
    for q, g in zip(Qp, I.generators):
        check = check + q * g
    if check != F:
        raise AssertionError("membership certificate failed re-verification")
    return Qp


def membership_rank_deficit(F: Poly, I: GradedIdeal) -> int:
    """rank([A | F]) - rank(A): 1 when F is outside the degree piece, else 0."""
    N = F.degree
    cols, _ = _shifted_rows(I.generators, N)
    vec = poly_vector(F, N)
    rows = _transpose(cols, dim_R(N))
    r0 = linalg.rank(rows, len(cols), I.field) if cols else 0
    aug = [r + [b] for r, b in zip(rows, vec)] if cols else [[b] for b in vec]
    r1 = linalg.rank(aug, len(cols) + 1, I.field)
    return r1 - r0


def graded_kernel(h: Sequence[Poly], e: int, engine: str = "auto") -> List[Tuple[Poly, ...]]:
    """Basis of {(A_1..A_k) in (R_e)^k : sum A_j h_j = 0} for homogeneous h_j of one degree s.

    A cheap modular rank bound is tried first: full column rank modulo a
    prime already proves the kernel is zero.
    """
    field = common_field(h)
    nz = [g for g in h if not g.is_zero()]
    degs = {g.degree for g in nz}
    if len(degs) > 1:
        raise NonHomogeneousInput("graded_kernel needs maps of one degree")
    k = len(h)
    basis_e = monomial_basis(e)
    if not nz:
        # every tuple is in the kernel
        out = []
        for j in range(k):
            for m in basis_e:
                t = [Poly(field)] * k
                t[j] = Poly.monomial(field, m)
                out.append(tuple(t))
        return out
    s = degs.pop()
    target = e + s
    cols, labels = [], []
    zero_col = [field.zero] * dim_R(target)
    for j, g in enumerate(h):
        if g.is_zero():
            for m in basis_e:
                cols.append(list(zero_col))
                labels.append((j, m))
            continue
        c, lab = _shifted_rows([g], target)
        cols.extend(c)
        labels.extend((j, m) for _, m in lab)
    rows = _transpose(cols, dim_R(target))
    ncols = len(cols)
    if linalg.rank_lower_bound(rows, ncols, field) == ncols:
        return []
    vecs = linalg.nullspace(rows, ncols, field, engine)
    out = []
    for v in vecs:
        parts = [dict() for _ in range(k)]
        for val, (j, m) in zip(v, labels):
            if not field.is_zero(val):
                parts[j][m] = val
        out.append(tuple(Poly(field, p) for p in parts))
    for t in out:
        acc = Poly(field)
        for a, g in zip(t, h):
            acc = acc + a * g
        if not acc.is_zero():
            raise AssertionError("kernel vector failed re-verification")
    return out


def kernel_dimension_bound(h: Sequence[Poly], e: int) -> int:
    """Upper bound (exact over GF(p)) on dim of the graded kernel in degree e."""
    field = common_field(h)
    s = next(g.degree for g in h if not g.is_zero())
    cols = []
    for g in h:
        if g.is_zero():
            cols.extend([[field.zero] * dim_R(e + s)] * dim_R(e))
        else:
            cols.extend(_shifted_rows([g], e + s)[0])
    rows = _transpose(cols, dim_R(e + s))
    return len(cols) - linalg.rank_lower_bound(rows, len(cols), field)
