"""Sparse polynomials in x, y, z over an exact field.

Monomials are exponent triples ordered by graded reverse lexicographic
order with x > y > z.  Affine two-variable polynomials (used by the
singularity machinery) are ordinary ``Poly`` values whose z-exponent is
zero, so the same order restricts to grevlex on (u, v).
"""
from __future__ import annotations

from typing import Dict, Iterable, Sequence, Tuple

from .errors import FieldMismatch, NonHomogeneousInput
from .scalars import QQ, Field, Scalar

Monomial = Tuple[int, int, int]
VARS = ("x", "y", "z")


def grevlex_key(m: Monomial):
    """Sort key; larger key means larger monomial."""
    return (m[0] + m[1] + m[2], -m[2], -m[1])


def monomial_degree(m: Monomial) -> int:
    return m[0] + m[1] + m[2]


def var_index(var) -> int:
    if isinstance(var, int):
        if var not in (0, 1, 2):
            raise ValueError(f"variable index {var} out of range")
        return var
    return VARS.index(var)


class Poly:
    __slots__ = ("field", "_terms", "_hdeg", "_hash")

    def __init__(self, field: Field, terms: Dict[Monomial, object] | None = None, *, _clean=False):
        self.field = field
        if terms is None:
            terms = {}
        if not _clean:
            red = field.reduce
            terms = {m: c2 for m, c in terms.items() if (c2 := red(c)) != 0}
        self._terms = terms
        self._hdeg = None
        self._hash = None

    # constructors --------------------------------------------------------
    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        return cls(field, {(0, 0, 0): field.coerce(c)})

    @classmethod
    def monomial(cls, field: Field, exps: Sequence[int], c=1) -> "Poly":
        return cls(field, {tuple(exps): field.coerce(c)})

    @classmethod
    def var(cls, field: Field, name) -> "Poly":
        e = [0, 0, 0]
        e[var_index(name)] = 1
        return cls(field, {tuple(e): field.one}, _clean=True)

    # basic access ----------------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, object]:
        return self._terms

    def sorted_terms(self):
        """(monomial, coefficient) pairs, largest monomial first."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coeff(self, m: Monomial):
        return self._terms.get(tuple(m), self.field.zero)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(monomial_degree(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        if self._hdeg is None:
            degs = {monomial_degree(m) for m in self._terms}
            self._hdeg = degs.pop() if len(degs) == 1 else (-1 if not degs else -2)
        return self._hdeg != -2

    @property
    def degree(self) -> int:
        """Degree of a homogeneous polynomial (-1 for zero)."""
        if not self.is_homogeneous():
            raise NonHomogeneousInput(f"{self} is not homogeneous")
        return self._hdeg

    def leading_term(self):
        m = max(self._terms, key=grevlex_key)
        return m, self._terms[m]

    def is_constant(self) -> bool:
        return all(m == (0, 0, 0) for m in self._terms)

    def constant_value(self):
        return self._terms.get((0, 0, 0), self.field.zero)

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field.spec} vs {other.field.spec}")
            return other
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field.spec} vs {other.field.spec}")
            other = other.value
        return Poly.const(self.field, other)

    def __add__(self, other):
        o = self._coerce(other)
        t = dict(self._terms)
        for m, c in o._terms.items():
            t[m] = t[m] + c if m in t else c
        return Poly(self.field, t)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        t = dict(self._terms)
        for m, c in o._terms.items():
            t[m] = t[m] - c if m in t else -c
        return Poly(self.field, t)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        red = self.field.reduce
        return Poly(self.field, {m: red(-c) for m, c in self._terms.items()}, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, Scalar):
                if other.field is not self.field:
                    raise FieldMismatch(f"{self.field.spec} vs {other.field.spec}")
                other = other.value
            return self.scale(other)
        o = self._coerce(other)
        if len(o._terms) == 1:
            (m2, c2), = o._terms.items()
            return self.mul_term(m2, c2)
        if len(self._terms) == 1:
            (m1, c1), = self._terms.items()
            return o.mul_term(m1, c1)
        acc: Dict[Monomial, object] = {}
        get = acc.get
        for (a1, b1, e1), c1 in self._terms.items():
            for (a2, b2, e2), c2 in o._terms.items():
                k = (a1 + a2, b1 + b2, e1 + e2)
                prev = get(k)
                acc[k] = c1 * c2 if prev is None else prev + c1 * c2
        return Poly(self.field, acc)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = self.field.coerce(c)
        if c == 0:
            return Poly(self.field)
        red = self.field.reduce
        return Poly(self.field, {m: red(v * c) for m, v in self._terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Poly":
        if self.field.is_zero(c):
            return Poly(self.field)
        a2, b2, e2 = mono
        red = self.field.reduce
        return Poly(self.field,
                    {(a + a2, b + b2, e + e2): red(v * c) for (a, b, e), v in self._terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field is other.field and self._terms == other._terms
        try:
            return self == self._coerce(other)
        except (FieldMismatch, TypeError, ValueError):
            return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # calculus / evaluation --------------------------------------------------
    def partial(self, var) -> "Poly":
        i = var_index(var)
        red = self.field.reduce
        out = {}
        for m, c in self._terms.items():
            k = m[i]
            if k:
                m2 = list(m)
                m2[i] = k - 1
                out[tuple(m2)] = red(c * k)
        return Poly(self.field, out)

    def gradient(self) -> Tuple["Poly", "Poly", "Poly"]:
        return (self.partial(0), self.partial(1), self.partial(2))

    def evaluate(self, point: Sequence) -> object:
        """Exact value at a point given as three raw values or Scalars."""
        vals = []
        for p in point:
            if isinstance(p, Scalar):
                if p.field is not self.field:
                    raise FieldMismatch(f"point in {p.field.spec}, poly in {self.field.spec}")
                p = p.value
            vals.append(self.field.coerce(p))
        powers = [{0: self.field.one} for _ in range(3)]

        def pw(i, k):
            d = powers[i]
            if k not in d:
                d[k] = self.field.reduce(vals[i] ** k) if k > 0 else self.field.one
            return d[k]

        total = self.field.zero
        for (a, b, e), c in self._terms.items():
            total = total + c * pw(0, a) * pw(1, b) * pw(2, e)
        return self.field.reduce(total)

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Replace (x, y, z) by the given polynomials."""
        result = Poly(self.field)
        cache = [{} for _ in range(3)]

        def pw(i, k):
            if k not in cache[i]:
                cache[i][k] = images[i] ** k
            return cache[i][k]

        for (a, b, e), c in self._terms.items():
            result = result + pw(0, a) * pw(1, b) * pw(2, e) * c
        return result

    def to_field(self, field: Field) -> "Poly":
        """Coefficient-wise image in another field (e.g. reduction mod p)."""
        return Poly(field, {m: field.coerce(c) for m, c in self._terms.items()})

    def monic(self) -> "Poly":
        if not self._terms:
            return self
        _, lc = self.leading_term()
        return self.scale(self.field.inv(lc))

    # division ---------------------------------------------------------------
    def divmod(self, divisor: "Poly"):
        """Division by one polynomial via leading-term elimination in grevlex."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        field = self.field
        lm, lc = divisor.leading_term()
        inv_lc = field.inv(lc)
        rem = dict(self._terms)
        quot: Dict[Monomial, object] = {}
        red = field.reduce
        remainder: Dict[Monomial, object] = {}
        dterms = list(divisor._terms.items())
        while rem:
            m = max(rem, key=grevlex_key)
            c = rem[m]
            if m[0] >= lm[0] and m[1] >= lm[1] and m[2] >= lm[2]:
                q = red(c * inv_lc)
                s = (m[0] - lm[0], m[1] - lm[1], m[2] - lm[2])
                quot[s] = q
                for dm, dc in dterms:
                    k = (dm[0] + s[0], dm[1] + s[1], dm[2] + s[2])
                    v = red(rem.get(k, 0) - q * dc)
                    if v == 0:
                        rem.pop(k, None)
                    else:
                        rem[k] = v
            else:
                remainder[m] = c
                del rem[m]
        return Poly(field, quot, _clean=True), Poly(field, remainder, _clean=True)

    def exact_div(self, divisor: "Poly") -> "Poly | None":
        """Quotient if divisor divides self exactly, else None."""
        q, r = self.divmod(divisor)
        return q if r.is_zero() else None

    # text -------------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly[{self.field.spec}]({self})"


def _fmt_monomial(m: Monomial) -> str:
    parts = []
    for name, k in zip(VARS, m):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text: terms in descending grevlex order, e.g. ``x^2*y - 1/3*z^3``."""
    if p.is_zero():
        return "0"
    field = p.field
    out = []
    for m, c in p.sorted_terms():
        if field.kind == "Fp":
            c_txt = field.format(c)
            neg = False
        else:
            c_txt = field.format(c)
            neg = c_txt.startswith("-") and not _is_compound(c_txt[1:])
            if neg:
                c_txt = c_txt[1:]
        mono = _fmt_monomial(m)
        if _is_compound(c_txt):
            c_txt = f"({c_txt})"
        if mono:
            body = mono if c_txt == "1" else f"{c_txt}*{mono}"
        else:
            body = c_txt
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def _is_compound(txt: str) -> bool:
    # a Gaussian rational with both parts, e.g. "1+2*i" or "1/2-i"
    return any(ch in "+-" for ch in txt)


def variables(field: Field = QQ):
    return tuple(Poly.var(field, v) for v in VARS)


def zero_poly(field: Field) -> Poly:
    return Poly(field)


Triple = Tuple[Poly, Poly, Poly]


def partial(f: Poly, var) -> Poly:
    return f.partial(var)


def gradient(f: Poly) -> Triple:
    return f.gradient()


def evaluate(f: Poly, point: Sequence):
    return f.evaluate(point)


def wedge(u: Sequence[Poly], v: Sequence[Poly]) -> Triple:
    """Cross product (u2 v3 - u3 v2, u3 v1 - u1 v3, u1 v2 - u2 v1)."""
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def minors2x2(c1: Sequence[Poly], c2: Sequence[Poly]) -> Triple:
    """Signed 2x2 minors (R1, R2, R3) of the 3x2 matrix [c1 | c2].

    Sign convention: det3(c1, c2, q) == q1*R1 + q2*R2 + q3*R3 for every q.
    """
    return wedge(c1, c2)


def det3(c1: Sequence[Poly], c2: Sequence[Poly], c3: Sequence[Poly]) -> Poly:
    """Determinant of the 3x3 matrix with the given columns."""
    r = wedge(c1, c2)
    return c3[0] * r[0] + c3[1] * r[1] + c3[2] * r[2]


def euler_column(field: Field) -> Triple:
    return variables(field)


def common_field(polys: Iterable[Poly]) -> Field:
    fields = {id(p.field): p.field for p in polys}
    if len(fields) != 1:
        raise FieldMismatch("polynomials over different fields")
    return next(iter(fields.values()))
