"""Eigenschemes of derivations and curve containment.

The eigenscheme of delta = P1*d/dx + P2*d/dy + P3*d/dz is cut out by the
2x2 minors of the 3x2 matrix [(x, y, z) | (P1, P2, P3)].  A curve F of degree
N contains it exactly when F = Q1*R1 + Q2*R2 + Q3*R3, and then the
derivation (Q1, Q2, Q3) completes delta to a Saito determinant for F.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Tuple

from .derivations import (Derivation, FreenessVerdict, apply, decide_freeness,
                          tangency)
from .errors import (ConsistencyError, DegreeTooSmall, EigenschemeNotFinite,
                     FieldMismatch, NonHomogeneousInput, TangencyViolated)
from .gradedlin import (GradedIdeal, HilbertProfile, hilbert_profile,
                        membership_certificate, membership_rank_deficit)
from .polys import Poly, det3, minors2x2, variables


@dataclass
class Eigenscheme:
    source: Derivation
    minors: Tuple[Poly, Poly, Poly]
    ideal: GradedIdeal
    profile: HilbertProfile

    @property
    def status(self) -> str:
        return self.profile.status

    @property
    def is_finite(self) -> bool:
        return self.profile.is_finite

    @property
    def length(self) -> Optional[int]:
        return self.profile.stable_value if self.is_finite else None

    @property
    def expected_length(self) -> int:
        """Chern-class length 1 + n + n^2 for a degree-n derivation."""
        n = self.source.degree
        return 1 + n + n * n

    def to_json(self) -> dict:
        return {"derivation": self.source.to_text(),
                "degree": self.source.degree,
                "generators": [str(r) for r in self.minors],
                "profile": self.profile.to_json(),
                "status": self.status,
                "length": self.length,
                "expected_length": self.expected_length}


def eigenscheme_of(delta: Derivation, t_max: int | None = None) -> Eigenscheme:
    if delta.is_zero():
        raise ValueError("the zero derivation has no eigenscheme")
    R = minors2x2(variables(delta.field), delta.coeffs)
    ideal = GradedIdeal(R, delta.field)
    if not ideal.generators:
        # proportional columns: every point is an eigenpoint
        prof = HilbertProfile([], 0, status="positive-dimensional")
        return Eigenscheme(delta, R, ideal, prof)
    return Eigenscheme(delta, R, ideal, hilbert_profile(ideal, t_max))


@dataclass
class ContainmentCertificate:
    """sum Q_i R_i = c*F, equivalently det[(x,y,z) | P | Q] = c*F."""
    curve: Poly
    Q: Tuple[Poly, Poly, Poly]
    c: object
    minors: Tuple[Poly, Poly, Poly]

    def verify(self) -> bool:
        acc = Poly(self.curve.field)
        for q, r in zip(self.Q, self.minors):
            acc = acc + q * r
        return acc == self.curve.scale(self.c)

    def to_json(self) -> dict:
        fld = self.curve.field
        return {"curve": str(self.curve), "Q": [str(q) for q in self.Q],
                "c": fld.format(self.c)}


@dataclass
class Containment:
    contained: bool
    certificate: Optional[ContainmentCertificate] = None
    rank_deficit: int = 0

    def to_json(self) -> dict:
        return {"contained": self.contained,
                "certificate": self.certificate.to_json() if self.certificate else None,
                "rank_deficit": self.rank_deficit}


def contains_curve(G: Eigenscheme, F: Poly) -> Containment:
    """Degree-N membership of F in the ideal of the eigenscheme.

    For N >= n+1 the degree-N piece spanned by the minors is the whole
    degree-N piece of the saturated ideal, so this is scheme containment.
    """
    if F.field is not G.source.field:
        raise FieldMismatch("curve and derivation over different fields")
    if F.is_zero() or not F.is_homogeneous():
        raise NonHomogeneousInput("contains_curve needs a nonzero homogeneous curve")
    n = G.source.degree
    if F.degree < n + 1:
        raise DegreeTooSmall(f"deg F = {F.degree} < {n + 1}")
    if not G.is_finite:
        raise EigenschemeNotFinite(f"eigenscheme is {G.status}")
    coeffs = membership_certificate(F, G.ideal)
    if coeffs is None:
        return Containment(False, rank_deficit=membership_rank_deficit(F, G.ideal))
    # map back to the full minor triple (zero minors were dropped)
    it = iter(coeffs)
    field = F.field
    Q = tuple(next(it) if not r.is_zero() else Poly(field) for r in G.minors)
    cert = ContainmentCertificate(F, Q, field.one, G.minors)
    if not cert.verify():
        raise AssertionError("containment certificate failed re-verification")
    # the same identity read as a Saito determinant
    if det3(variables(field), G.source.coeffs, Q) != F:
        raise AssertionError("determinant form of the containment identity failed")
    return Containment(True, cert)


def _has_exponents(v: FreenessVerdict, pair) -> bool:
    return v.is_free and tuple(sorted(v.exponents)) == tuple(sorted(pair))


@dataclass
class TheoremCheck:
    """Two independent answers to 'is F free with the stated exponents?'."""
    curve: Poly
    exponents: Tuple[int, int]
    freeness: FreenessVerdict
    containment: Containment
    notes: List[str] = dc_field(default_factory=list)

    @property
    def free_side(self) -> bool:
        return _has_exponents(self.freeness, self.exponents)

    @property
    def containment_side(self) -> bool:
        return self.containment.contained

    @property
    def agree(self) -> bool:
        return self.free_side == self.containment_side

    def to_json(self) -> dict:
        return {"curve": str(self.curve), "exponents": list(self.exponents),
                "free_with_exponents": self.free_side,
                "contains_eigenscheme": self.containment_side,
                "agree": self.agree, "freeness": self.freeness.to_json(),
                "containment": self.containment.to_json(), "notes": self.notes}


def theorem25_check(delta: Derivation, F: Poly, *, t_max: int | None = None,
                    G: Eigenscheme | None = None) -> TheoremCheck:
    """F tangent to delta is free with exponents (n, d-n-1) iff F contains the eigenscheme.

    Both sides are computed independently; disagreement raises
    ConsistencyError, since the equivalence is a theorem.
    """
    if tangency(delta, F) is None:
        raise TangencyViolated("the derivation is not tangent to the curve")
    n, d = delta.degree, F.degree
    if d < n + 1:
        raise DegreeTooSmall(f"deg F = {d} < deg delta + 1 = {n + 1}")
    if G is None:
        G = eigenscheme_of(delta, t_max)
    if not G.is_finite:
        raise EigenschemeNotFinite(f"eigenscheme is {G.status}; the derivation is not irreducible")
    side_b = contains_curve(G, F)
    side_a = decide_freeness(F)
    rep = TheoremCheck(F, (n, d - n - 1), side_a, side_b)
    rep.notes.append("irreducible derivation read as: finite eigenscheme")
    if apply(delta, F).is_zero():
        rep.notes.append("delta lies in Der_0(F)")
    if not rep.agree:
        raise ConsistencyError("freeness and eigenscheme containment disagree", rep.to_json())
    return rep
