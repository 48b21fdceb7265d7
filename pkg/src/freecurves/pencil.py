"""Pencils of plane curves (f^a, g^b) and their canonical derivation.

For f of degree n and g of degree m the pencil is lambda*f^a + mu*g^b with
a*n = b*m = lcm(n, m).  The canonical derivation is [grad f ^ grad g] . grad;
its eigenscheme is the union of the base locus B = V(f, g) and
Z = V(grad f ^ grad g).  Unions of members are free with exponents
(n+m-2, N-n-m+1) exactly when they contain that eigenscheme.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import lcm
from typing import List, Optional, Sequence, Tuple

from .derivations import Derivation, apply, decide_freeness, is_reduced, tangency
from .eigenscheme import (Eigenscheme, TheoremCheck, contains_curve, eigenscheme_of)
from .errors import (CommonFactor, ConsistencyError, DegreeTooSmall, DuplicateMember,
                     EigenschemeNotFinite, InconclusiveProfile, InfiniteZ,
                     MemberSingularOutsideB, NonHomogeneousInput, NotAMemberProduct,
                     NotReduced, PreconditionFailed)
from .gradedlin import GradedIdeal, HilbertProfile, hilbert_profile
from .polys import Poly, wedge
from .scalars import Field
from .singularities import solve_projective

Param = Tuple[object, object]

INFINITE_Z_REMARK = (
    "for n = m, V(grad f ^ grad g) contains a curve exactly when the pencil has a "
    "non-reduced member u1^r1*...*ut^rt; the canonical derivation is then a multiple "
    "of the one built from h = u1*...*ut, which needs a factorization")


def normalize_param(p: Sequence, field: Field) -> Param:
    """Projective normal form of (lambda : mu): first nonzero entry is 1."""
    lam, mu = field.coerce(p[0]), field.coerce(p[1])
    if field.is_zero(lam) and field.is_zero(mu):
        raise ValueError("(0:0) is not a pencil parameter")
    c = field.inv(lam) if not field.is_zero(lam) else field.inv(mu)
    return field.reduce(lam * c), field.reduce(mu * c)


def canonical_derivation(f: Poly, g: Poly) -> Derivation:
    for h in (f, g):
        if h.is_zero() or not h.is_homogeneous() or h.degree < 1:
            raise NonHomogeneousInput("pencil generators must be homogeneous and nonconstant")
    return Derivation(wedge(f.gradient(), g.gradient()))


class Pencil:
    """The pencil (f^a, g^b); ``a`` and ``b`` here are powers, not exponents."""

    def __init__(self, f: Poly, g: Poly, *, check: bool = True):
        if f.field is not g.field:
            raise ValueError("f and g over different fields")
        self.f, self.g = f, g
        self.field = f.field
        self.canonical = canonical_derivation(f, g)
        self.n, self.m = f.degree, g.degree
        L = lcm(self.n, self.m)
        self.a, self.b = L // self.n, L // self.m
        self._base: Optional[HilbertProfile] = None
        if check:
            for h in (f, g):
                red = is_reduced(h)
                if not red:
                    raise NotReduced(f"{h}: {red.detail}")
            if not self.base_profile().is_finite:
                raise CommonFactor("f and g share a factor: the base locus is not finite")

    def base_profile(self, t_max: int | None = None) -> HilbertProfile:
        if self._base is None or t_max is not None:
            self._base = hilbert_profile(GradedIdeal([self.f, self.g]), t_max)
        return self._base

    def member(self, param: Sequence) -> Poly:
        lam, mu = normalize_param(param, self.field)
        return (self.f ** self.a).scale(lam) + (self.g ** self.b).scale(mu)

    def to_json(self) -> dict:
        return {"f": str(self.f), "g": str(self.g), "n": self.n, "m": self.m,
                "powers": [self.a, self.b], "canonical": self.canonical.to_text()}


@dataclass
class MemberSelection:
    params: List[Param]
    members: List[Poly]
    product: Poly

    def to_json(self, field: Field) -> dict:
        return {"params": [[field.format(l), field.format(m)] for l, m in self.params],
                "members": [str(p) for p in self.members], "product": str(self.product)}


def member_union(P: Pencil, params: Sequence[Sequence]) -> MemberSelection:
    norm = [normalize_param(p, P.field) for p in params]
    if len(set(norm)) != len(norm):
        raise DuplicateMember("pencil parameters must be pairwise distinct")
    members = [P.member(p) for p in norm]
    prod = Poly.const(P.field, 1)
    for mem in members:
        prod = prod * mem
    if not apply(P.canonical, prod).is_zero():
        raise AssertionError("canonical derivation does not annihilate the member union")
    return MemberSelection(norm, members, prod)


def _finite_common(F: Poly, G: Poly) -> bool:
    if F.is_constant() or G.is_constant():
        return True
    return hilbert_profile(GradedIdeal([F, G])).is_finite


def split_tangency(P: Pencil, F: Poly, G: Poly) -> Tuple[Poly, Poly]:
    """Cofactors (K_F, K_G) of the canonical derivation on a split F*G of a member union."""
    delta = P.canonical
    if not apply(delta, F * G).is_zero():
        raise NotAMemberProduct("F*G is not annihilated by the canonical derivation")
    if not _finite_common(F, G):
        raise CommonFactor("F and G share a factor")
    KF, KG = tangency(delta, F), tangency(delta, G)
    if KF is None or KG is None:
        raise AssertionError("split factors are not tangent to the canonical derivation")
    # delta(F*G) = (K_F + K_G)*F*G = 0
    if not (KF + KG).is_zero():
        raise AssertionError("K_F + K_G != 0")
    return KF, KG


@dataclass
class SingularMember:
    point: tuple
    param: Param

    def to_json(self, field: Field) -> dict:
        return {"point": [field.format(c) for c in self.point],
                "param": [field.format(self.param[0]), field.format(self.param[1])]}


@dataclass
class PencilAnalysis:
    pencil: Pencil
    B: HilbertProfile
    Z: HilbertProfile
    gamma: Eigenscheme
    singular_members: List[SingularMember]
    z_points: list
    z_residual: list
    substitution: Optional[dict] = None

    @property
    def decomposition_holds(self) -> Optional[bool]:
        if not (self.B.is_finite and self.Z.is_finite and self.gamma.is_finite):
            return None
        return self.gamma.length == self.B.stable_value + self.Z.stable_value

    @property
    def expected_z_length(self) -> int:
        n, m = self.pencil.n, self.pencil.m
        return (n - 1) ** 2 + (n - 1) * (m - 1) + (m - 1) ** 2

    def singular_params(self) -> List[Param]:
        out = []
        for s in self.singular_members:
            if s.param not in out:
                out.append(s.param)
        return out

    def to_json(self) -> dict:
        fld = self.pencil.field
        return {"pencil": self.pencil.to_json(),
                "B": self.B.to_json(), "Z": self.Z.to_json(),
                "gamma": self.gamma.to_json(),
                "expected_z_length": self.expected_z_length,
                "decomposition_holds": self.decomposition_holds,
                "singular_members": [s.to_json(fld) for s in self.singular_members],
                "singular_params": [[fld.format(l), fld.format(m)] for l, m in self.singular_params()],
                "z_points": [[fld.format(c) for c in p] for p in self.z_points],
                "z_residual": self.z_residual,
                "substitution": self.substitution}


def _z_profile(f: Poly, g: Poly, t_max=None) -> HilbertProfile:
    return hilbert_profile(GradedIdeal(wedge(f.gradient(), g.gradient())), t_max)


def _try_substitution(P: Pencil, seed: int, tries: int = 10) -> Optional[dict]:
    """Replace f by lam*f + mu*g hoping for a finite Z (n = m only)."""
    rng = random.Random(seed)
    for k in range(tries):
        lam, mu = rng.randint(1, 9), rng.randint(-9, 9)
        f2 = P.f.scale(P.field.coerce(lam)) + P.g.scale(P.field.coerce(mu))
        if f2.is_zero():
            continue
        if _z_profile(f2, P.g).is_finite:
            return {"attempt": k, "f": str(f2), "param": [lam, mu]}
    return None


def member_parameter(P: Pencil, p: Sequence) -> Optional[Param]:
    """(lambda : mu) with a*lam*f^(a-1)*grad f + b*mu*g^(b-1)*grad g = 0 at p."""
    fld = P.field
    fp, gp = P.f.evaluate(p), P.g.evaluate(p)
    A = [fld.reduce(fld.coerce(P.a) * fp ** (P.a - 1) * c) for c in (h.evaluate(p) for h in P.f.gradient())]
    B = [fld.reduce(fld.coerce(P.b) * gp ** (P.b - 1) * c) for c in (h.evaluate(p) for h in P.g.gradient())]
    for i in range(3):
        if not (fld.is_zero(A[i]) and fld.is_zero(B[i])):
            lam, mu = normalize_param((B[i], fld.reduce(-A[i])), fld)
            if all(fld.is_zero(fld.reduce(lam * A[j] + mu * B[j])) for j in range(3)):
                return lam, mu
            return None
    return None


def analyze(P: Pencil, t_max: int | None = None, seed: int = 0) -> PencilAnalysis:
    B = P.base_profile(t_max)
    Z = _z_profile(P.f, P.g, t_max)
    substitution = None
    if not Z.is_finite:
        if Z.status == "inconclusive":
            raise InconclusiveProfile(f"Z profile inconclusive: {Z.values}")
        if P.n == P.m:
            substitution = _try_substitution(P, seed)
        raise InfiniteZ("V(grad f ^ grad g) is not finite"
                        + ("" if substitution is None else f"; substitution {substitution} gives finite Z"),
                        remark=INFINITE_Z_REMARK if P.n == P.m else None)
    gamma = eigenscheme_of(P.canonical, t_max)
    an = PencilAnalysis(P, B, Z, gamma, [], [], [], substitution)
    if an.decomposition_holds is False:
        raise ConsistencyError("deg Gamma != deg B + deg Z", an.to_json())
    sol = solve_projective(list(wedge(P.f.gradient(), P.g.gradient())))
    an.z_points = [p for p, _, _ in sol.points]
    an.z_residual = sol.residual
    fld = P.field
    for p in an.z_points:
        if fld.is_zero(P.f.evaluate(p)) or fld.is_zero(P.g.evaluate(p)):
            continue
        par = member_parameter(P, p)
        if par is None:
            raise AssertionError("point of Z without a pencil parameter")
        an.singular_members.append(SingularMember(p, par))
    if len(an.singular_params()) > an.expected_z_length:
        raise ConsistencyError("more singular members than the length of Z", an.to_json())
    return an


def _divides_member_union(F: Poly, sel: MemberSelection) -> bool:
    return sel.product.exact_div(F) is not None


def theorem35_check(P: Pencil, F: Poly, sel: MemberSelection, *,
                    gamma: Eigenscheme | None = None) -> TheoremCheck:
    """F | F_k is free with exponents (n+m-2, N-n-m+1) iff F contains the eigenscheme."""
    if len(sel.params) < 2:
        raise PreconditionFailed("a union of at least two members is required")
    if not _divides_member_union(F, sel):
        raise NotAMemberProduct("F does not divide the member union")
    N = F.degree
    if N <= P.n + P.m - 1:
        raise DegreeTooSmall(f"deg F = {N} must exceed n+m-1 = {P.n + P.m - 1}")
    if gamma is None:
        gamma = eigenscheme_of(P.canonical)
    if not gamma.is_finite:
        raise EigenschemeNotFinite(f"eigenscheme is {gamma.status}")
    side_b = contains_curve(gamma, F)
    side_a = decide_freeness(F)
    rep = TheoremCheck(F, (P.n + P.m - 2, N - P.n - P.m + 1), side_a, side_b)
    if not rep.agree:
        raise ConsistencyError("freeness and eigenscheme containment disagree", rep.to_json())
    return rep


@dataclass
class SmoothMemberReport:
    base: TheoremCheck
    param: Param
    curve: Poly
    exponents: Tuple[int, int]
    containment: bool
    free: bool

    @property
    def agree(self) -> bool:
        return self.containment == self.free

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "curve": str(self.curve),
                "exponents": list(self.exponents), "contains_eigenscheme": self.containment,
                "free_with_exponents": self.free, "agree": self.agree}


def add_smooth_member(P: Pencil, F: Poly, sel: MemberSelection, param: Sequence,
                      analysis: PencilAnalysis | None = None) -> SmoothMemberReport:
    """F free with exponents (n+m-2, N-n-m+1) plus a member smooth outside B
    stays free, with exponents (n+m-2, N+an-n-m+1)."""
    fld = P.field
    par = normalize_param(param, fld)
    if par in sel.params:
        raise DuplicateMember("the added member is already part of the union")
    if analysis is None:
        analysis = analyze(P)
    if par in analysis.singular_params():
        raise MemberSingularOutsideB(f"member {par} is singular outside the base locus")
    base = theorem35_check(P, F, sel, gamma=analysis.gamma)
    if not base.free_side:
        raise PreconditionFailed("F is not free with the pencil exponents")
    C = P.member(par)
    FC = F * C
    N2 = F.degree + P.a * P.n
    exps = (P.n + P.m - 2, N2 - P.n - P.m + 1)
    cont = contains_curve(analysis.gamma, FC).contained
    v = decide_freeness(FC)
    free = v.is_free and tuple(sorted(v.exponents)) == tuple(sorted(exps))
    rep = SmoothMemberReport(base, par, FC, exps, cont, free)
    if not rep.agree or not free:
        raise ConsistencyError("adding a smooth member broke freeness", rep.to_json())
    return rep
