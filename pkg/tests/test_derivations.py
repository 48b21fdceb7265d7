import random

import pytest
from hypothesis import given, settings, strategies as st

from freecurves.derivations import (Derivation, FreenessCertificate, apply, decide_freeness,
                                    der0_basis, euler_split, free_dimension, is_reduced, mdr,
                                    saito_scalar, singular_locus_finite, squarefree_line, tangency)
from freecurves.errors import (CertificateInvalid, CharacteristicDividesDegree, NotReduced,
                               NotTangent)
from freecurves.parsing import parse_poly
from freecurves.pencil import canonical_derivation
from freecurves.polys import Poly, variables
from freecurves.scalars import GF, QQ

from strategies import F65537, homogeneous, nonzero_homogeneous

P = lambda s, K=QQ: parse_poly(s, K)  # noqa: E731
D = lambda *cs, K=QQ: Derivation([P(c, K) for c in cs])  # noqa: E731
CEVA = "x*y*z*(x-y)*(x-z)*(y-z)"

# curves with known exponents; used for the free-dimension law
GOLDEN_FREE = [("x*y*z", (1, 1)), (CEVA, (2, 3)), ("x*y*z*(x-y)", (1, 2)),
               ("x*z*(z^2-x*y)", (1, 2)), ("(x^3-y^3)*(y^3-z^3)*(x^3-z^3)", (4, 4))]


def test_apply_examples():
    E = Derivation.euler(QQ)
    f = P("x^3+2*x*y*z-z^3")
    assert apply(E, f) == f.scale(3)
    assert apply(D("x", "-y", "0"), P("x*y")).is_zero()
    for n in (1, 2, 3):
        mu = D(f"x^{n+1}", f"y^{n+1}", f"z^{n+1}")
        assert apply(mu, P(f"x^{n}-y^{n}")) == P(f"{n}*x^{2*n}-{n}*y^{2*n}")
        assert tangency(mu, P("x")) == P(f"x^{n}")


def test_tangency_cofactors():
    f, g = P("x^2+y^2+z^2"), P("x*y*z")
    assert tangency(Derivation.euler(QQ), f) == Poly.const(QQ, 2)
    d = canonical_derivation(f, g)
    assert tangency(d, f).is_zero() and tangency(d, g).is_zero()
    assert tangency(D("y", "0", "0"), P("x")) is None


def test_euler_split():
    f = P("x*y*z")
    dp, K = euler_split(Derivation.euler(QQ), f)
    assert dp.is_zero() and K == Poly.const(QQ, 3)
    th = D("x", "-y", "0")
    assert euler_split(th, f) == (th, Poly(QQ))
    dp, K = euler_split(Derivation.euler(QQ) + th, f)
    assert dp == th and K == Poly.const(QQ, 3)
    with pytest.raises(NotTangent):
        euler_split(D("y", "0", "0"), P("x"))
    with pytest.raises(CharacteristicDividesDegree):
        euler_split(Derivation.euler(GF(3)), P("x*y*z", GF(3)))


def test_der0_dimensions_and_mdr():
    assert len(der0_basis(P("x*y*z"), 1)) == 2
    assert len(der0_basis(P("x^2+y^2+z^2"), 0)) == 0
    assert [len(der0_basis(P(CEVA), e)) for e in (0, 1, 2)] == [0, 0, 1]
    assert mdr(P("x*y*z")) == 1
    assert mdr(P("x^2+y^2+z^2")) == 1
    assert mdr(P(CEVA)) == 2


def test_saito_scalar_examples():
    assert saito_scalar(P("x*y*z"), D("x", "-y", "0"), D("0", "y", "-z")) == 3
    th = D("x", "-y", "0")
    assert saito_scalar(P("x*y*z"), th, th) == 0


def test_freeness_examples():
    v = decide_freeness(P(CEVA))
    assert v.is_free and v.exponents == (2, 3)
    v.certificate.verify()
    v = decide_freeness(P("x^2+y^2+z^2"))
    assert v.status == "not-free" and v.mdr == 1
    assert not decide_freeness(P("x^3+y^3+z^3")).is_free
    with pytest.raises(NotReduced):
        decide_freeness(P("x^2*y"))


def test_reducedness():
    assert not is_reduced(P("x^2*y"))
    assert is_reduced(P("x*y*z"))
    two = P("(x^2+y^2+z^2)*(x^2+y^2+2*z^2)")
    assert is_reduced(two)
    assert singular_locus_finite(two).reduced
    assert not singular_locus_finite(P("x^2*y")).reduced
    # non-reduced with a hidden repeated factor of high degree
    F = P("(x^3+y^3+z^3)^2*(x-y)")
    r = is_reduced(F)
    assert not r and r.method == "line-pencil"
    assert squarefree_line(F) is None


def test_certificate_roundtrip_and_tampering():
    cert = decide_freeness(P(CEVA)).certificate
    again = FreenessCertificate.from_json(cert.to_json())
    again.verify()
    bad = cert.to_json()
    bad["c"] = "11"
    with pytest.raises(CertificateInvalid):
        FreenessCertificate.from_json(bad).verify()


@pytest.mark.parametrize("curve,exps", GOLDEN_FREE)
def test_golden_free_dimension_law(curve, exps):
    f = P(curve)
    v = decide_freeness(f)
    assert v.is_free and v.exponents == exps
    a, b = exps
    assert a + b + 1 == f.degree
    for e in range(a + b + 1):
        assert len(der0_basis(f, e)) == free_dimension(a, b, e)


# --- properties ---------------------------------------------------------------------

@settings(max_examples=40)
@given(st.integers(1, 5).flatmap(lambda d: nonzero_homogeneous(F65537, d, max_terms=4)))
def test_euler_split_property(f):
    E = Derivation.euler(F65537)
    rng = random.Random(f.degree)
    lin = Poly(F65537, {m: rng.randrange(65537) for m in [(1, 0, 0), (0, 1, 0)]})
    zero = Derivation([Poly(F65537)] * 3)
    for th in der0_basis(f, 2)[:3] + [zero]:
        dp, K = euler_split(th + E * lin, f)
        assert apply(dp, f).is_zero()
        assert K == lin.scale(f.degree)


def _free_pair(f):
    v = decide_freeness(f)
    return v.certificate


@settings(max_examples=40)
@given(st.sampled_from(GOLDEN_FREE[:4]), st.data())
def test_tangent_pairs_have_saito_determinant_divisible_by_f(golden, data):
    f = P(golden[0])
    cert = _free_pair(f)
    a, b = cert.exponents
    E = Derivation.euler(QQ)
    deg = data.draw(st.integers(b, b + 1))

    def combo():
        parts = [(cert.theta1, deg - a), (cert.theta2, deg - b), (E, deg - 1)]
        out = Derivation([Poly(QQ)] * 3)
        for th, k in parts:
            if k >= 0:
                h = data.draw(homogeneous(QQ, k, max_terms=3))
                out = out + th * h
        return out

    t1, t2 = combo(), combo()
    from freecurves.polys import det3
    Dt = det3(variables(QQ), t1.coeffs, t2.coeffs)
    assert Dt.is_zero() or Dt.exact_div(f) is not None


@settings(max_examples=25)
@given(st.sampled_from(["x*y*z", CEVA, "x*y*z*(x-y)", "x^2+y^2+z^2", "x^3+y^3+z^3",
                        "x*y*(x^2+y^2+z^2)", "(x^2+y^2+z^2)*(x^2+y^2+2*z^2)"]))
def test_free_verdict_invariants(curve):
    f = P(curve)
    v = decide_freeness(f)
    if v.is_free:
        a, b = v.exponents
        assert a + b + 1 == f.degree
        c = v.certificate
        c.verify()
        assert not QQ.is_zero(c.c)
        assert tangency(c.theta1, f) is not None and tangency(c.theta2, f) is not None


def test_freeness_over_prime_field():
    K = F65537
    v = decide_freeness(P(CEVA, K))
    assert v.is_free and v.exponents == (2, 3)
    with pytest.raises(CharacteristicDividesDegree):
        decide_freeness(P(CEVA, GF(5)))
