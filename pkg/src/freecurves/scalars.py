"""Exact scalar fields: Q, Q(i) and GF(p).

Polynomials store raw field values (``gmpy2.mpq`` for Q, :class:`GaussQ` for
Q(i), plain ``int`` residues for GF(p)).  Raw values support the native
``+``, ``-``, ``*`` operators; :meth:`Field.reduce` brings a result back to
canonical form (only GF(p) needs it).  :class:`Scalar` is the checked,
field-tagged wrapper used at API boundaries.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

from .errors import DivisionByZero, FieldMismatch, ParseError

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin; the fixed witness set is deterministic below 2**64."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _to_mpq(v) -> mpq:
    if isinstance(v, str):
        return _parse_rational(v)
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def _parse_rational(text: str) -> mpq:
    m = _RAT_RE.match(text)
    if not m:
        raise ParseError(f"not a rational number: {text!r}", 0, ("a", "a/b"))
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise DivisionByZero("zero denominator")
    return mpq(num, den)


def _fmt_rational(q: mpq) -> str:
    return str(q)


class GaussQ:
    """Gaussian rational re + im*i with both parts reduced fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _to_mpq(re))
        object.__setattr__(self, "im", _to_mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussQ is immutable")

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussQ):
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return GaussQ(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def conjugate(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    def norm(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussQ":
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero in Q(i)")
        return GaussQ(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = GaussQ(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussQ({format_gauss(self)})"


def format_gauss(v: GaussQ) -> str:
    if v.im == 0:
        return _fmt_rational(v.re)
    if v.im == 1:
        imag = "i"
    elif v.im == -1:
        imag = "-i"
    else:
        imag = f"{_fmt_rational(v.im)}*i"
    if v.re == 0:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{_fmt_rational(v.re)}{sign}{imag}"


_GAUSS_TERM = re.compile(r"([+-]?)\s*(\d+(?:\s*/\s*\d+)?)?\s*(\*?\s*i)?")


def parse_gauss(text: str) -> GaussQ:
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty Gaussian rational", 0)
    pos, re_part, im_part = 0, mpq(0), mpq(0)
    while pos < len(s):
        m = _GAUSS_TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ParseError(f"bad Gaussian rational {text!r}", pos, ("a/b", "c/d*i"))
        sign = -1 if m.group(1) == "-" else 1
        if pos > 0 and not m.group(1):
            raise ParseError(f"bad Gaussian rational {text!r}", pos, ("+", "-"))
        mag = _parse_rational(m.group(2)) if m.group(2) else mpq(1)
        if m.group(3):
            if m.group(2) is not None and not m.group(3).startswith("*"):
                raise ParseError(f"bad Gaussian rational {text!r}", pos, ("*i",))
            im_part += sign * mag
        else:
            re_part += sign * mag
        pos = m.end()
    return GaussQ(re_part, im_part)


class Field:
    """Base class; concrete fields are singletons per parameter."""

    kind = "?"
    characteristic = 0

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def reduce(self, v):
        return v

    def coerce(self, v):
        raise NotImplementedError

    def is_zero(self, v) -> bool:
        return v == 0

    def inv(self, v):
        raise NotImplementedError

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    def format(self, v) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def scalar(self, v) -> "Scalar":
        return Scalar(self, self.coerce(v))

    def __repr__(self):
        return f"<field {self.spec}>"


class Rationals(Field):
    kind = "Q"
    spec = "q"

    def coerce(self, v):
        if isinstance(v, GaussQ):
            if v.im != 0:
                raise FieldMismatch("non-real value in Q")
            return v.re
        return _to_mpq(v)

    def inv(self, v):
        if v == 0:
            raise DivisionByZero("division by zero in Q")
        return 1 / mpq(v)

    def format(self, v) -> str:
        return _fmt_rational(v)

    def parse(self, text: str):
        return _parse_rational(text)


class GaussianRationals(Field):
    kind = "QI"
    spec = "qi"

    def coerce(self, v):
        if isinstance(v, GaussQ):
            return v
        if isinstance(v, str):
            return parse_gauss(v)
        return GaussQ(v, 0)

    def inv(self, v):
        return self.coerce(v).inverse()

    def format(self, v) -> str:
        return format_gauss(v)

    def parse(self, text: str):
        return parse_gauss(text)

    @property
    def i(self):
        return GaussQ(0, 1)


class PrimeField(Field):
    kind = "Fp"

    def __init__(self, p: int):
        if not (isinstance(p, int) and p < 2**62 and is_prime(p)):
            raise ValueError(f"{p!r} is not a prime below 2^62")
        self.p = p
        self.characteristic = p
        self.spec = f"fp:{p}"

    def reduce(self, v):
        return v % self.p

    def coerce(self, v):
        if isinstance(v, str):
            v = _parse_rational(v)
        if isinstance(v, GaussQ):
            if v.im != 0:
                raise FieldMismatch("non-real value in GF(p)")
            v = v.re
        if isinstance(v, int):
            return v % self.p
        q = _to_mpq(v)
        num, den = int(q.numerator), int(q.denominator)
        if den % self.p == 0:
            raise DivisionByZero(f"denominator divisible by {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def inv(self, v):
        if v % self.p == 0:
            raise DivisionByZero(f"division by zero in GF({self.p})")
        return pow(v, -1, self.p)

    def is_zero(self, v) -> bool:
        return v % self.p == 0

    def format(self, v) -> str:
        return str(v % self.p)

    def parse(self, text: str):
        return self.coerce(text)

    def signed(self, v) -> int:
        """Symmetric representative in (-p/2, p/2]."""
        v %= self.p
        return v - self.p if v > self.p // 2 else v


QQ = Rationals()
QQI = GaussianRationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str) -> Field:
    """Parse ``q``, ``qi`` or ``fp:P``."""
    s = spec.strip().lower()
    if s in ("q", "qq"):
        return QQ
    if s in ("qi", "q(i)"):
        return QQI
    if s.startswith("fp:") or s.startswith("gf:"):
        return GF(int(s[3:]))
    raise ValueError(f"unknown field {spec!r}; use q, qi or fp:P")


def reduce_mod_p(value, field: PrimeField):
    """The Q -> GF(p) reduction homomorphism."""
    return field.coerce(value)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field; arithmetic checks fields."""

    field: Field
    value: object

    def _check(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field.spec} vs {other.field.spec}")
            return other
        return Scalar(self.field, self.field.coerce(other))

    def __add__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.reduce(self.value + o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.reduce(self.value - o.value))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.reduce(self.value * o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.div(self.value, o.value))

    def __rtruediv__(self, other):
        return self._check(other) / self

    def __neg__(self):
        return Scalar(self.field, self.field.reduce(-self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, ValueError, FieldMismatch, ParseError):
            return False

    def __hash__(self):
        return hash((self.field.spec, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field.spec}, {self})"


def is_zero(a: Scalar) -> bool:
    return a.is_zero()
