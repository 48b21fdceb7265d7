"""Derivations of R, tangency, the Euler split and Saito's freeness criterion."""
from __future__ import annotations

import random
from itertools import product
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import List, Optional, Sequence, Tuple

import flint

from .errors import (CharacteristicDividesDegree, DegreeMismatch, FieldMismatch,
                     InconclusiveProfile, NonHomogeneousInput, NotReduced,
                     NotTangent, TangencyViolated, CertificateInvalid, Refusal)
from .gradedlin import GradedIdeal, graded_kernel, hilbert_profile, kernel_dimension_bound
from .polys import Poly, det3, variables
from .scalars import Field, field_from_spec


class Derivation:
    """P1*d/dx + P2*d/dy + P3*d/dz with homogeneous coefficients of one degree.

    The zero derivation is representable (it arises from the Euler split of
    the Euler derivation itself); ``degree`` is then -1.
    """

    __slots__ = ("coeffs", "field", "degree")

    def __init__(self, coeffs: Sequence[Poly]):
        if len(coeffs) != 3:
            raise ValueError("a derivation has three coefficients")
        fields = {id(c.field) for c in coeffs}
        if len(fields) != 1:
            raise FieldMismatch("coefficients over different fields")
        degs = set()
        for c in coeffs:
            if c.is_zero():
                continue
            if not c.is_homogeneous():
                raise NonHomogeneousInput(f"coefficient {c} is not homogeneous")
            degs.add(c.degree)
        if len(degs) > 1:
            raise DegreeMismatch(f"coefficients of different degrees {sorted(degs)}")
        self.coeffs: Tuple[Poly, Poly, Poly] = tuple(coeffs)
        self.field: Field = coeffs[0].field
        self.degree: int = degs.pop() if degs else -1

    @classmethod
    def euler(cls, field: Field) -> "Derivation":
        return cls(variables(field))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __call__(self, f: Poly) -> Poly:
        return apply(self, f)

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, h) -> "Derivation":
        return Derivation([c * h for c in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_text(self) -> List[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        return "Derivation(" + ", ".join(self.to_text()) + ")"


def apply(delta: Derivation, f: Poly) -> Poly:
    if f.field is not delta.field:
        raise FieldMismatch("derivation and polynomial over different fields")
    gx, gy, gz = f.gradient()
    P1, P2, P3 = delta.coeffs
    return P1 * gx + P2 * gy + P3 * gz


def tangency(delta: Derivation, f: Poly) -> Optional[Poly]:
    """Cofactor K with delta(f) == K*f, or None if delta is not tangent to f."""
    return apply(delta, f).exact_div(f)


def euler_split(delta: Derivation, f: Poly) -> Tuple[Derivation, Poly]:
    """(delta', K) with delta = delta' + (K/d)*delta_E and delta'(f) = 0."""
    K = tangency(delta, f)
    if K is None:
        raise NotTangent(f"derivation is not tangent to {f}")
    d = f.degree
    field = f.field
    if field.characteristic and d % field.characteristic == 0:
        raise CharacteristicDividesDegree(f"char {field.characteristic} divides degree {d}")
    factor = K.scale(field.inv(field.coerce(d)))
    E = variables(field)
    dprime = Derivation([P - factor * e for P, e in zip(delta.coeffs, E)])
    if not apply(dprime, f).is_zero():
        raise AssertionError("Euler split failed re-verification")
    return dprime, K


def der0_basis(f: Poly, e: int, engine: str = "auto") -> List[Derivation]:
    """Basis of the degree-e piece of Der_0(f), the kernel of the Jacobian map."""
    if e < 0:
        return []
    return [Derivation(list(t)) for t in graded_kernel(f.gradient(), e, engine)]


def der0_dimension_bound(f: Poly, e: int) -> int:
    """Upper bound on dim Der_0(f)_e (exact over GF(p))."""
    if e < 0:
        return 0
    return kernel_dimension_bound(f.gradient(), e)


def mdr(f: Poly) -> Optional[int]:
    """Least e < deg f with Der_0(f)_e != 0, or None."""
    for e in range(f.degree):
        if der0_dimension_bound(f, e) and der0_basis(f, e):
            return e
    return None


def free_dimension(a: int, b: int, e: int) -> int:
    """dim Der_0(f)_e for a free curve with exponents (a, b)."""
    def c(k):
        return comb(k + 2, 2) if k >= 0 else 0
    return c(e - a) + c(e - b)


# --- reducedness ----------------------------------------------------------------

@dataclass
class Reducedness:
    reduced: bool
    method: str
    detail: str

    def __bool__(self):
        return self.reduced


def _univariate_coeffs(p: Poly) -> list:
    """Coefficients (constant first) of a polynomial in x alone."""
    deg = p.total_degree()
    out = [p.field.zero] * (deg + 1)
    for (a, b, c), v in p.terms.items():
        out[a] = v
    return out


def _upoly_trim(u: list, field: Field) -> list:
    while u and field.is_zero(u[-1]):
        u = u[:-1]
    return u


def _upoly_rem(a: list, b: list, field: Field) -> list:
    a = list(a)
    inv = field.inv(b[-1])
    while len(a) >= len(b):
        q = field.reduce(a[-1] * inv)
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = field.reduce(a[shift + i] - q * bc)
        a = _upoly_trim(a, field)
    return a


def upoly_gcd_degree(a: list, b: list, field: Field) -> int:
    a, b = _upoly_trim(a, field), _upoly_trim(b, field)
    while b:
        a, b = b, _upoly_rem(a, b, field)
        # keep coefficients small over Q
        if b:
            inv = field.inv(b[-1])
            b = [field.reduce(c * inv) for c in b]
    return len(a) - 1


def _squarefree_of_full_degree(u: list, d: int, field: Field) -> bool:
    u = _upoly_trim(u, field)
    if len(u) - 1 != d:
        return False
    if field.kind == "Q":
        U = flint.fmpq_poly([flint.fmpq(int(c.numerator), int(c.denominator)) for c in u])
        return U.gcd(U.derivative()).degree() == 0
    if field.kind == "Fp":
        U = flint.nmod_poly([int(c) for c in u], field.p)
        return U.gcd(U.derivative()).degree() == 0
    du = [field.reduce(c * k) for k, c in enumerate(u)][1:]
    return upoly_gcd_degree(u, du, field) == 0


def _coeff_table(H: Poly) -> dict:
    """H(s, t) with s in the x-slot, t in the y-slot -> {s-power: {t-power: c}}."""
    table: dict = {}
    for (a, b, _), c in H.terms.items():
        table.setdefault(a, {})[b] = c
    return table


def squarefree_line(f: Poly, tries: int = 8, seed: int = 0):
    """A pair of points (A, B) such that f restricted to the line A*s + B is
    squarefree of full degree, or None after ``tries`` random attempts.

    A hit proves f reduced; a miss proves nothing.
    """
    field = f.field
    d = f.degree
    rng = random.Random(seed)
    x = Poly.var(field, "x")
    one = Poly.const(field, 1)
    for _ in range(tries):
        A = [rng.randint(-7, 7) for _ in range(3)]
        B = [rng.randint(-7, 7) for _ in range(3)]
        images = [x.scale(a) + one.scale(b) for a, b in zip(A, B)]
        if _squarefree_of_full_degree(_univariate_coeffs(f.substitute(images)), d, field):
            return A, B
    return None


def is_reduced(f: Poly, tries: int = 8, seed: int = 0) -> Reducedness:
    """Decide whether the homogeneous f is squarefree.

    A repeated factor h^2 of f restricts to a repeated factor on every line,
    so one line on which f restricts to a squarefree binary form of full
    degree proves f reduced.  Conversely, for the pencil of lines through a
    point P off the curve, the discriminant of the restriction is a polynomial
    of degree <= 2d(d-1) in the pencil parameter; if it vanishes at
    2d(d-1)+1 parameters it vanishes identically, which for p = 0 or
    p > d means f has a repeated factor.
    """
    if f.is_zero() or not f.is_homogeneous():
        raise NonHomogeneousInput("is_reduced needs a nonzero homogeneous polynomial")
    d = f.degree
    field = f.field
    if d <= 1:
        return Reducedness(True, "degree", f"degree {d}")
    line = squarefree_line(f, tries, seed)
    if line is not None:
        return Reducedness(True, "line-restriction",
                           f"restriction to the line through {line[0]} and {line[1]} is squarefree")
    x = Poly.var(field, "x")
    y = Poly.var(field, "y")
    one = Poly.const(field, 1)
    # exhaustive pencil through a point off the curve
    P = _point_off_curve(f)
    L0, L1 = _complement_points(P)
    images = [x.scale(P[i]) + one.scale(L0[i]) + y.scale(L1[i]) for i in range(3)]
    table = _coeff_table(f.substitute(images))
    count = 2 * d * (d - 1) + 1
    if field.characteristic and field.characteristic < count:
        raise InconclusiveProfile("field too small for the exhaustive line test")
    for t in range(count):
        tv = field.coerce(t)
        u = []
        for k in range(d + 1):
            row = table.get(k, {})
            acc = field.zero
            for b, c in row.items():
                acc = acc + c * tv ** b
            u.append(field.reduce(acc))
        if _squarefree_of_full_degree(u, d, field):
            return Reducedness(True, "line-restriction",
                               f"restriction to the line through {P} and {L0}+{t}*{L1} is squarefree")
    return Reducedness(False, "line-pencil",
                       f"all {count} lines through {P} meet the curve non-transversally")


def _point_off_curve(f: Poly):
    """A small integer point where f does not vanish.

    A nonzero form of degree d cannot vanish on the whole grid {0..d}^3.
    """
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    pts += list(product(range(f.degree + 1), repeat=3))
    return next(p for p in pts if any(p) and not f.field.is_zero(f.evaluate(p)))


def _complement_points(P):
    """Two points that together with P span the plane."""
    cands = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for i in range(3):
        for j in range(i + 1, 3):
            A, B = cands[i], cands[j]
            det = (P[0] * (A[1] * B[2] - A[2] * B[1]) - P[1] * (A[0] * B[2] - A[2] * B[0])
                   + P[2] * (A[0] * B[1] - A[1] * B[0]))
            if det:
                return A, B
    raise AssertionError("unreachable")


def singular_locus_finite(f: Poly, t_max: int | None = None) -> Reducedness:
    """Reducedness via the Hilbert profile of <f, f_x, f_y, f_z> (char 0)."""
    prof = hilbert_profile(GradedIdeal([f, *f.gradient()]), t_max)
    if prof.status == "finite":
        return Reducedness(True, "singular-locus", f"singular scheme finite of length {prof.stable_value}")
    if prof.status == "positive-dimensional":
        return Reducedness(False, "singular-locus", "singular locus contains a curve")
    raise InconclusiveProfile(f"singular-locus profile inconclusive: {prof.values}")


# --- Saito ----------------------------------------------------------------------

def saito_scalar(f: Poly, theta1: Derivation, theta2: Derivation):
    """The raw scalar c with det(delta_E, theta1, theta2) == c*f."""
    for th in (theta1, theta2):
        if tangency(th, f) is None:
            raise TangencyViolated(f"{th} is not tangent to f")
    if theta1.degree + theta2.degree != f.degree - 1:
        raise DegreeMismatch(f"degrees {theta1.degree}+{theta2.degree} != {f.degree - 1}")
    D = det3(variables(f.field), theta1.coeffs, theta2.coeffs)
    return _scalar_ratio(D, f)


def _scalar_ratio(D: Poly, f: Poly):
    field = f.field
    if D.is_zero():
        return field.zero
    m, lc = f.leading_term()
    c = field.div(D.coeff(m), lc)
    if D != f.scale(c):
        raise AssertionError("Saito determinant is not a scalar multiple of f")
    return c


@dataclass
class FreenessCertificate:
    curve: Poly
    exponents: Tuple[int, int]
    theta1: Derivation
    theta2: Derivation
    c: object
    K1: Poly
    K2: Poly

    def verify(self) -> None:
        """Re-check every identity by expansion; raise CertificateInvalid on failure."""
        f = self.curve
        field = f.field
        a, b = self.exponents
        problems = []
        if a > b:
            problems.append("exponents not ordered")
        if a + b != f.degree - 1:
            problems.append(f"a+b = {a + b} != deg f - 1 = {f.degree - 1}")
        if self.theta1.degree != a or self.theta2.degree != b:
            problems.append("derivation degrees do not match exponents")
        if field.is_zero(self.c):
            problems.append("c is zero")
        D = det3(variables(field), self.theta1.coeffs, self.theta2.coeffs)
        if D != f.scale(self.c):
            problems.append("det(delta_E, theta1, theta2) != c*f")
        if apply(self.theta1, f) != self.K1 * f:
            problems.append("theta1(f) != K1*f")
        if apply(self.theta2, f) != self.K2 * f:
            problems.append("theta2(f) != K2*f")
        if problems:
            raise CertificateInvalid("; ".join(problems))

    def to_json(self) -> dict:
        return {
            "field": self.curve.field.spec,
            "curve": str(self.curve),
            "exponents": list(self.exponents),
            "theta1": self.theta1.to_text(),
            "theta2": self.theta2.to_text(),
            "c": self.curve.field.format(self.c),
            "K1": str(self.K1),
            "K2": str(self.K2),
        }

    @classmethod
    def from_json(cls, d: dict) -> "FreenessCertificate":
        from .parsing import parse_poly
        field = field_from_spec(d["field"])
        P = lambda s: parse_poly(s, field)  # noqa: E731
        return cls(P(d["curve"]), tuple(d["exponents"]),
                   Derivation([P(s) for s in d["theta1"]]),
                   Derivation([P(s) for s in d["theta2"]]),
                   field.parse(d["c"]), P(d["K1"]), P(d["K2"]))


@dataclass
class FreenessVerdict:
    status: str  # "free" | "not-free" | "inconclusive"
    mdr: Optional[int]
    certificate: Optional[FreenessCertificate] = None
    reason: str = ""
    evidence: dict = dc_field(default_factory=dict)

    @property
    def is_free(self) -> bool:
        return self.status == "free"

    @property
    def exponents(self) -> Optional[Tuple[int, int]]:
        return self.certificate.exponents if self.certificate else None

    def to_json(self) -> dict:
        return {"status": self.status, "mdr": self.mdr,
                "exponents": list(self.exponents) if self.exponents else None,
                "reason": self.reason, "evidence": self.evidence,
                "certificate": self.certificate.to_json() if self.certificate else None}


def _check_characteristic(f: Poly):
    p = f.field.characteristic
    if p and p <= f.degree:
        raise CharacteristicDividesDegree(f"GF({p}) refused for a curve of degree {f.degree}")


def decide_freeness(f: Poly, *, check_reduced: bool = True, engine: str = "auto") -> FreenessVerdict:
    """Free/not-free decision with a Saito certificate or a checkable reason.

    Steps: a = mdr(f); b = deg f - 1 - a; freeness would force
    dim Der_0(f)_e to match the free-module count in degrees a and b; finally
    the Saito pairing on basis pairs of Der_0(f)_a x Der_0(f)_b is searched in
    lexicographic order.  The pairing is bilinear, so vanishing on all basis
    pairs proves non-freeness.
    """
    if f.is_zero() or not f.is_homogeneous():
        raise NonHomogeneousInput("decide_freeness needs a nonzero homogeneous polynomial")
    _check_characteristic(f)
    d = f.degree
    if check_reduced:
        red = is_reduced(f)
        if not red:
            raise NotReduced(red.detail)
    a = None
    basis_a: List[Derivation] = []
    for e in range(d):
        if der0_dimension_bound(f, e) == 0:
            continue
        basis_a = der0_basis(f, e, engine)
        if basis_a:
            a = e
            break
    if a is None:
        return FreenessVerdict("not-free", None, reason="no derivation below degree d")
    if 2 * a > d - 1:
        return FreenessVerdict("not-free", a, reason="mdr exceeds (d-1)/2; exponents must sum to d-1")
    b = d - 1 - a
    want_a, want_b = free_dimension(a, b, a), free_dimension(a, b, b)
    if len(basis_a) != want_a:
        return FreenessVerdict("not-free", a, reason="dimension of Der0 in degree mdr",
                               evidence={"degree": a, "dimension": len(basis_a), "free_would_need": want_a})
    if b == a:
        basis_b = basis_a
    else:
        bound = der0_dimension_bound(f, b)
        if bound < want_b:
            return FreenessVerdict("not-free", a, reason="dimension bound of Der0 in degree b",
                                   evidence={"degree": b, "dimension_at_most": bound,
                                             "free_would_need": want_b})
        basis_b = der0_basis(f, b, engine)
        if len(basis_b) != want_b:
            return FreenessVerdict("not-free", a, reason="dimension of Der0 in degree b",
                                   evidence={"degree": b, "dimension": len(basis_b),
                                             "free_would_need": want_b})
    for i, t1 in enumerate(basis_a):
        for j, t2 in enumerate(basis_b):
            c = saito_scalar(f, t1, t2)
            if not f.field.is_zero(c):
                cert = FreenessCertificate(f, (a, b), t1, t2, c,
                                           Poly(f.field), Poly(f.field))
                cert.verify()
                return FreenessVerdict("free", a, cert, reason="Saito criterion",
                                       evidence={"pair": [i, j]})
    return FreenessVerdict("not-free", a, reason="Saito pairing identically zero on Der0_a x Der0_b",
                           evidence={"pairs_checked": len(basis_a) * len(basis_b)})
