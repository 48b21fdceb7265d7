import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from freecurves import fixtures as fx
from freecurves.derivations import Derivation
from freecurves.eigenscheme import contains_curve, eigenscheme_of, theorem25_check
from freecurves.errors import (DegreeTooSmall, EigenschemeNotFinite, FieldMismatch,
                               TangencyViolated)
from freecurves.parsing import parse_poly
from freecurves.pencil import canonical_derivation
from freecurves.polys import Poly, det3, variables
from freecurves.scalars import QQ

from strategies import F65537, random_form

P = lambda s, K=QQ: parse_poly(s, K)  # noqa: E731


def power_derivation(n, K=QQ):
    return Derivation([P(f"{v}^{n}", K) for v in "xyz"])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_power_derivation_length(n):
    # mu = x^{n+1} d/dx + ... has degree n+1
    G = eigenscheme_of(power_derivation(n + 1))
    assert G.is_finite and G.length == n * n + 3 * n + 3 == G.expected_length


def test_euler_derivation_is_degenerate():
    G = eigenscheme_of(Derivation.euler(QQ))
    assert G.status == "positive-dimensional" and G.length is None


def test_osculating_canonical_derivation_length():
    G = eigenscheme_of(canonical_derivation(P("x*z"), P("z^2-x*y")))
    assert G.length == 7


def test_sextic_pencil_containments():
    f, g = P("x^2+y^2+z^2"), P("x*y*z")
    G = eigenscheme_of(canonical_derivation(f, g))
    assert G.length == 13
    member = f * f * f - g * g.scale(27)
    for F in (P("x*y*z") * member, P("y*z") * member):
        c = contains_curve(G, F)
        assert c.contained and c.certificate.verify()


def test_random_form_is_not_contained():
    rng = random.Random(5)
    G = eigenscheme_of(canonical_derivation(P("x^2+y^2+z^2"), P("x*y*z")))
    F = random_form(QQ, 6, rng)
    c = contains_curve(G, F)
    assert not c.contained and c.rank_deficit == 1


def test_containment_refusals():
    G = eigenscheme_of(power_derivation(3))
    with pytest.raises(DegreeTooSmall):
        contains_curve(G, P("x*y*z"))
    with pytest.raises(FieldMismatch):
        contains_curve(G, P("x^4*y", F65537))
    with pytest.raises(EigenschemeNotFinite):
        contains_curve(eigenscheme_of(Derivation.euler(QQ)), P("x^3*y"))


def test_theorem_check_sextic_members():
    f, g = P("x^2+y^2+z^2"), P("x*y*z")
    delta = canonical_derivation(f, g)
    member = f * f * f - g * g.scale(27)
    rep = theorem25_check(delta, P("x*y*z") * member)
    assert rep.agree and rep.free_side and rep.exponents == (3, 5)


def test_theorem_check_two_osculating_conics():
    f, g = P("x*z"), P("z^2-x*y")
    rep = theorem25_check(canonical_derivation(f, g), g * (f + g))
    assert rep.agree and not rep.free_side and not rep.containment_side


def test_theorem_check_remark_quintic():
    fix = fx.build("remark_quintic")
    rep = theorem25_check(fix.payload["delta"], fix.payload["curve"])
    assert rep.freeness.is_free and rep.freeness.exponents == (2, 2)
    assert rep.exponents == (3, 1) and not rep.containment_side and rep.agree


def test_theorem_check_preconditions():
    with pytest.raises(TangencyViolated):
        theorem25_check(power_derivation(2), P("x^3+y^3+z^3+x*y*z"))
    with pytest.raises(DegreeTooSmall):
        theorem25_check(power_derivation(3), P("x*y*z"))
    with pytest.raises(EigenschemeNotFinite):
        theorem25_check(Derivation.euler(QQ), P("x*y*z"))


# --- properties ---------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_generic_length_over_prime_field(n):
    rng = random.Random(100 + n)
    finite = 0
    for _ in range(20):
        d = Derivation([random_form(F65537, n, rng) for _ in range(3)])
        G = eigenscheme_of(d)
        if G.is_finite:
            finite += 1
            assert G.length == 1 + n + n * n
    assert finite >= 18


@pytest.mark.parametrize("n", [1, 2, 3])
def test_generic_length_over_rationals(n):
    rng = random.Random(200 + n)
    for _ in range(4):
        d = Derivation([random_form(QQ, n, rng, bound=3) for _ in range(3)])
        G = eigenscheme_of(d)
        if G.is_finite:
            assert G.length == 1 + n + n * n


@settings(max_examples=25)
@given(st.integers(1, 3), st.integers(0, 2), st.randoms(use_true_random=False))
def test_containment_certificate_reverifies(n, extra, rnd):
    rng = random.Random(rnd.random())
    d = Derivation([random_form(F65537, n, rng) for _ in range(3)])
    G = eigenscheme_of(d)
    if not G.is_finite:
        return
    N = n + 1 + extra
    Q = [random_form(F65537, N - n - 1, rng) for _ in range(3)]
    F = det3(variables(F65537), d.coeffs, Q)
    if F.is_zero():
        return
    c = contains_curve(G, F)
    assert c.contained
    cert = c.certificate
    total = sum((q * r for q, r in zip(cert.Q, cert.minors)), Poly(F65537))
    assert total == F


TANGENT_FACTORS = {2: ["x", "y", "z", "x^2-y^2", "y^2-z^2", "x^2-z^2", "x-y", "x+y", "y-z"],
                   3: ["x", "y", "z", "x^3-y^3", "y^3-z^3", "x^3-z^3", "x-y", "y-z", "x-z"]}


@pytest.mark.parametrize("n", [2, 3])
def test_theorem_sides_never_disagree_for_power_derivation(n):
    """Products of curves tangent to x^{n+1}d/dx + ...: both sides must agree."""
    mu = power_derivation(n + 1)
    G = eigenscheme_of(mu)
    seen = 0
    for r in range(2, 6):
        for combo in itertools.combinations(TANGENT_FACTORS[n], r):
            F = Poly.const(QQ, 1)
            for t in combo:
                F = F * P(t)
            if F.degree < n + 2 or F.degree > 9:
                continue
            # factors must be pairwise coprime for a reduced product
            if "x-y" in combo and f"x^{n}-y^{n}" in combo:
                continue
            if "y-z" in combo and f"y^{n}-z^{n}" in combo:
                continue
            if "x-z" in combo and f"x^{n}-z^{n}" in combo:
                continue
            if n == 2 and "x+y" in combo and "x^2-y^2" in combo:
                continue
            if n == 2 and "x-z" in combo and "x^2-z^2" in combo:
                continue
            rep = theorem25_check(mu, F, G=G)
            assert rep.agree
            seen += 1
            if seen >= 25:
                return
