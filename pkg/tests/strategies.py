"""Hypothesis strategies shared by the property tests."""
import random

from gmpy2 import mpq
from hypothesis import strategies as st

from freecurves.gradedlin import monomial_basis
from freecurves.polys import Poly
from freecurves.scalars import GF, QQ, QQI, GaussQ

F13 = GF(13)
F65537 = GF(65537)

small_ints = st.integers(min_value=-50, max_value=50)
rationals = st.builds(lambda a, b: mpq(a, b), st.integers(-10**6, 10**6), st.integers(1, 10**4))


def elements(field):
    if field is QQ:
        return rationals
    if field is QQI:
        return st.builds(GaussQ, rationals, rationals)
    return st.integers(0, field.p - 1)


def homogeneous(field, degree, coeffs=small_ints, max_terms=6):
    """Random homogeneous polynomial of the given degree (possibly zero)."""
    mons = monomial_basis(degree)
    return st.dictionaries(st.sampled_from(mons), coeffs, max_size=max_terms).map(
        lambda d: Poly(field, {m: field.coerce(c) for m, c in d.items()}))


def nonzero_homogeneous(field, degree, **kw):
    return homogeneous(field, degree, **kw).filter(lambda p: not p.is_zero())


def random_form(field, degree, rng: random.Random, bound=None):
    """Dense random form; coefficients uniform in GF(p) or small integers."""
    terms = {}
    for m in monomial_basis(degree):
        if field.characteristic:
            terms[m] = rng.randrange(field.characteristic)
        else:
            terms[m] = field.coerce(rng.randint(-(bound or 5), bound or 5))
    return Poly(field, terms)
