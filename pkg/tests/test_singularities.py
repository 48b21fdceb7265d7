import random

import pytest
from hypothesis import given, settings, strategies as st

from freecurves import linalg
from freecurves.errors import PositiveDimensional
from freecurves.parsing import parse_poly
from freecurves.polys import Poly
from freecurves.scalars import QQ, QQI
from freecurves.singularities import (buchberger2, dehomogenize, is_groebner, local_invariants,
                                      local_multiplicity, milnor_at, quotient_of, roots_in_field,
                                      singular_points, solve_points, tjurina_at, tjurina_report,
                                      tjurina_total)

from strategies import F65537

# affine polynomials in (u, v) are written with x, y
A = lambda s, K=QQ: parse_poly(s.replace("u", "x").replace("v", "y"), K)  # noqa: E731
P = lambda s, K=QQ: parse_poly(s, K)  # noqa: E731
OSC = {"f": "x*z", "g": "z^2-x*y"}
G_FPG_FMG = P("(z^2-x*y)*(x*z+z^2-x*y)*(x*z-z^2+x*y)")
X_FPG_FMG = P("x*(x*z+z^2-x*y)*(x*z-z^2+x*y)")
CEVA = P("x*y*z*(x-y)*(x-z)*(y-z)")


def test_groebner_examples():
    assert sorted(map(str, buchberger2([A("u"), A("v")]))) == ["x", "y"]
    G = buchberger2([A("u^2"), A("u*v"), A("v^2")])
    assert sorted(map(str, G)) == sorted(["x^2", "x*y", "y^2"])
    assert is_groebner(G)
    G = buchberger2([A("u^2+v^2-1"), A("u-v")])
    assert is_groebner(G)


def test_quotient_dimensions():
    assert quotient_of([A("u"), A("v")]).dimension == 1
    assert quotient_of([A("u^2"), A("v")]).dimension == 2
    assert quotient_of([A("u^2"), A("u*v"), A("v^2")]).dimension == 3
    with pytest.raises(PositiveDimensional):
        quotient_of([A("u*v")])


def test_solve_points_examples():
    sol = solve_points(quotient_of([A("u-1"), A("v-2")]))
    assert sol.points == [((1, 2), 1)]
    sol = solve_points(quotient_of([A("u^2+1"), A("v")]))
    assert sol.points == [] and sol.residual[0]["factor_degrees"] == [2]
    assert sol.residual_dimension == 2
    sol = solve_points(quotient_of([A("u^2+1", QQI), A("v", QQI)]))
    assert sorted(QQI.format(p[0][0]) for p in sol.points) == ["-i", "i"]


def test_roots_in_field():
    roots, rest = roots_in_field([QQ.coerce(c) for c in (-2, 0, 1)], QQ)  # t^2 - 2
    assert roots == [] and rest == [2]


def test_local_multiplicity_examples():
    node = A("u*v")
    Q = quotient_of([node.partial("x"), node.partial("y")])
    assert local_multiplicity(Q, (0, 0)) == 1
    cusp = A("u^2-v^3")
    Q = quotient_of([cusp.partial("x"), cusp.partial("y")])
    assert Q.dimension == 2 and local_multiplicity(Q, (0, 0)) == 2
    Q = quotient_of([A("u*(u-1)"), A("v")])
    assert local_multiplicity(Q, (0, 0)) == 1 == local_multiplicity(Q, (1, 0))


def test_osculating_tangency_point():
    pt = (0, 1, 0)
    li = local_invariants(G_FPG_FMG, pt)
    assert (li.mu, li.tau) == (16, 15) and not li.quasihomogeneous
    li = local_invariants(X_FPG_FMG, pt)
    assert (li.mu, li.tau) == (12, 11) and not li.quasihomogeneous
    h = dehomogenize(G_FPG_FMG, "y")
    Q = quotient_of([h.partial("x"), h.partial("y")])
    sol = solve_points(Q)
    assert sum(m for _, m in sol.points) + sol.residual_dimension == Q.dimension
    assert dict(sol.points)[(0, 0)] == 16


def test_simple_singularities_are_quasihomogeneous():
    assert milnor_at(P("x*y*z"), (0, 0, 1)) == 1 == tjurina_at(P("x*y*z"), (0, 0, 1))
    cusp = P("y^2*z-x^3")
    assert (milnor_at(cusp, (0, 0, 1)), tjurina_at(cusp, (0, 0, 1))) == (2, 2)
    triple = local_invariants(CEVA, (0, 0, 1))
    assert (triple.mu, triple.tau) == (4, 4)


def test_tjurina_totals():
    assert tjurina_total(P("x*y*z")) == 3
    rep = tjurina_report(CEVA)
    assert rep.total == 19 and rep.local_sum == 19 and rep.agree
    assert sorted(li.tau for li in rep.local) == [1, 1, 1, 4, 4, 4, 4]
    rep = tjurina_report(G_FPG_FMG)
    assert rep.all_rational and rep.agree
    assert rep.total == 15 + sum(li.tau for li in rep.local if li.point != (0, 1, 0))


def test_singular_points_of_smooth_cubic():
    assert singular_points(P("x^3+y^3+z^3")).points == []


# --- properties ---------------------------------------------------------------------

def _random_affine(rng, deg, K=F65537):
    terms = {}
    for i in range(deg + 1):
        for j in range(deg + 1 - i):
            terms[(i, j, 0)] = rng.randrange(K.p)
    return Poly(K, terms)


@settings(max_examples=30)
@given(st.integers(1, 3), st.integers(1, 3), st.randoms(use_true_random=False))
def test_multiplicities_sum_to_dimension_and_matrices_commute(d1, d2, rnd):
    rng = random.Random(rnd.random())
    p, q = _random_affine(rng, d1), _random_affine(rng, d2)
    # add a double point at the origin half of the time
    if rng.random() < 0.5:
        p = p * Poly.var(F65537, "x")
        q = q * Poly.var(F65537, "x") + Poly.var(F65537, "y") ** 2
    try:
        Q = quotient_of([p, q])
    except PositiveDimensional:
        return
    K = F65537
    assert linalg.mat_mul(Q.Mu, Q.Mv, K) == linalg.mat_mul(Q.Mv, Q.Mu, K)
    sol = solve_points(Q)
    assert sum(m for _, m in sol.points) + sol.residual_dimension == Q.dimension
    for pt, m in sol.points:
        assert local_multiplicity(Q, pt) == m


def _curve_singular_at_origin(rng, d):
    """Random degree-d curve with at least a double point at (0:0:1)."""
    terms = {}
    for k in range(2, d + 1):
        for i in range(k + 1):
            if rng.random() < 0.6:
                terms[(i, k - i, d - k)] = QQ.coerce(rng.randint(-3, 3))
    return Poly(QQ, terms)


@settings(max_examples=40)
@given(st.integers(3, 6), st.randoms(use_true_random=False))
def test_milnor_at_least_tjurina(d, rnd):
    rng = random.Random(rnd.random())
    f = _curve_singular_at_origin(rng, d)
    if f.is_zero() or f.degree != d:
        return
    try:
        li = local_invariants(f, (0, 0, 1))
    except PositiveDimensional:
        return  # non-isolated singularity (f has a repeated factor through the point)
    assert li.mu >= li.tau >= 1


@settings(max_examples=10)
@given(st.sampled_from(["x*y*z", "x*y*z*(x-y)", "y^2*z-x^3", "x^3+y^3+z^3",
                        "(x^2+y^2+z^2)*(x^2+y^2+2*z^2)", "y^2*z-x^3-x^2*z"]))
def test_two_paths_for_tjurina_total(curve):
    rep = tjurina_report(P(curve))
    if rep.all_rational:
        assert rep.total == rep.local_sum
