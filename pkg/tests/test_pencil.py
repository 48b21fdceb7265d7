import random

import pytest
from hypothesis import given, settings, strategies as st

from freecurves.derivations import apply
from freecurves.errors import (CommonFactor, DuplicateMember, InfiniteZ, MemberSingularOutsideB,
                               NotAMemberProduct, NotReduced, PreconditionFailed)
from freecurves.parsing import parse_poly
from freecurves.pencil import (Pencil, add_smooth_member, analyze, canonical_derivation,
                               member_union, normalize_param, split_tangency, theorem35_check)
from freecurves.polys import Poly
from freecurves.singularities import normalize_point
from freecurves.scalars import QQ

from strategies import F65537, random_form

P = lambda s, K=QQ: parse_poly(s, K)  # noqa: E731


@pytest.fixture(scope="module")
def osculating():
    pen = Pencil(P("x*z"), P("z^2-x*y"))
    return pen, analyze(pen)


@pytest.fixture(scope="module")
def sextic():
    pen = Pencil(P("x^2+y^2+z^2"), P("x*y*z"))
    return pen, analyze(pen)


def test_canonical_derivation_degrees():
    assert canonical_derivation(P("x^3+y^3+z^3"), P("x*y*z")).degree == 4
    assert canonical_derivation(P("x^2+y^2+z^2"), P("x*y*z")).degree == 3


def test_powers_and_members():
    pen = Pencil(P("x^2+y^2+z^2"), P("x*y*z"))
    assert (pen.a, pen.b) == (3, 2)
    f, g = pen.f, pen.g
    assert pen.member((1, -27)) == f * f * f - (g * g).scale(27)
    assert normalize_param((2, 4), QQ) == (1, 2)
    assert normalize_param((0, 5), QQ) == (0, 1)


def test_member_union_and_duplicates(osculating):
    pen, _ = osculating
    f, g = pen.f, pen.g
    sel = member_union(pen, [(0, 1), (1, 1), (1, -1)])
    assert sel.product == g * (f + g) * (f - g)
    with pytest.raises(DuplicateMember):
        member_union(pen, [(1, 1), (2, 2)])
    single = member_union(pen, [(1, 0)])
    assert apply(pen.canonical, single.product).is_zero()


def test_split_tangency(osculating, sextic):
    pen, _ = osculating
    KF, KG = split_tangency(pen, pen.f, pen.g)
    assert KF.is_zero() and KG.is_zero()
    KF, KG = split_tangency(pen, pen.f * pen.g, Poly.const(QQ, 1))
    assert KG.is_zero()
    spen, _ = sextic
    member = spen.member((1, -27))
    KF, KG = split_tangency(spen, P("y*z") * member, P("x"))
    assert not KF.is_zero() and KF == -KG
    with pytest.raises(NotAMemberProduct):
        split_tangency(pen, P("x"), P("y"))


def test_sextic_analysis(sextic):
    pen, an = sextic
    assert (an.B.stable_value, an.Z.stable_value, an.gamma.length) == (6, 7, 13)
    assert an.decomposition_holds
    params = an.singular_params()
    assert params == [(1, QQ.coerce(-27))]
    pts = {normalize_point(s.point, QQ) for s in an.singular_members}
    assert pts == {normalize_point(p, QQ) for p in [(1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)]}


def test_conic_pencil_lengths():
    an = analyze(Pencil(P("x^2-y^2"), P("y^2-z^2")))
    assert (an.B.stable_value, an.Z.stable_value, an.gamma.length) == (4, 3, 7)
    assert len(an.singular_params()) <= an.expected_z_length


def test_hesse_lengths():
    an = analyze(Pencil(P("x^3+y^3+z^3"), P("x*y*z")))
    assert (an.B.stable_value, an.Z.stable_value, an.gamma.length) == (9, 12, 21)


def test_osculating_theorems(osculating):
    pen, an = osculating
    assert an.gamma.length == 7
    fg = member_union(pen, [(1, 0), (0, 1)])
    rep = theorem35_check(pen, fg.product, fg, gamma=an.gamma)
    assert rep.free_side and sorted(rep.exponents) == [1, 2]
    sel = member_union(pen, [(0, 1), (1, 1), (1, -1)])
    rep = theorem35_check(pen, sel.product, sel, gamma=an.gamma)
    assert rep.free_side and sorted(rep.exponents) == [2, 3]
    two = member_union(pen, [(0, 1), (1, 1)])
    rep = theorem35_check(pen, two.product, two, gamma=an.gamma)
    assert not rep.free_side and not rep.containment_side
    # a fourth member keeps freeness: (2, 3+2)
    free_sel = member_union(pen, [(0, 1), (1, 1), (1, -1)])
    smooth = next(p for p in [(1, 2), (1, 3), (2, 1)] if p not in free_sel.params)
    rep = add_smooth_member(pen, free_sel.product, free_sel, smooth, an)
    assert rep.free and rep.exponents == (2, 5)


def test_conic_pencil_unions():
    quad = Pencil(P("x"), P("y^2-x*z"))
    an = analyze(quad)
    assert an.gamma.length == 3
    sel = member_union(quad, [(0, 1), (1, 1)])
    assert sorted(theorem35_check(quad, sel.product, sel).exponents) == [1, 2]
    trip = Pencil(P("x*z"), P("z^2-x*y"))
    sel = member_union(trip, [(0, 1), (1, 1), (1, -1)])
    rep = theorem35_check(trip, sel.product, sel)
    assert rep.free_side and sorted(rep.exponents) == [2, 3]


def test_pencil_refusals(osculating, sextic):
    pen, an = osculating
    with pytest.raises(NotReduced):
        Pencil(P("x^2"), P("y^2"))
    with pytest.raises(CommonFactor):
        Pencil(P("x*y"), P("x*z"))
    with pytest.raises(PreconditionFailed):
        sel = member_union(pen, [(1, 0)])
        theorem35_check(pen, sel.product, sel)
    sel = member_union(pen, [(1, 0), (0, 1)])
    with pytest.raises(NotAMemberProduct):
        theorem35_check(pen, P("x*y*z"), sel)
    spen, san = sextic
    ssel = member_union(spen, [(1, 0), (0, 1)])
    with pytest.raises(MemberSingularOutsideB):
        add_smooth_member(spen, ssel.product, ssel, (1, -27), san)
    with pytest.raises(DuplicateMember):
        add_smooth_member(pen, sel.product, sel, (1, 0), an)


def test_infinite_z_reports_the_non_reduced_member():
    # 2*x*y + (x^2 + y^2) = (x + y)^2 is a double line in this pencil
    pen = Pencil(P("x*y"), P("x^2+y^2"), check=False)
    with pytest.raises(InfiniteZ) as e:
        analyze(pen)
    assert "non-reduced member" in e.value.remark


# --- properties over GF(65537) --------------------------------------------------------

def _random_pencil(n, m, rng):
    K = F65537
    while True:
        f, g = random_form(K, n, rng), random_form(K, m, rng)
        try:
            return Pencil(f, g)
        except (NotReduced, CommonFactor):
            continue


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 3)])
def test_decomposition_property(n, m):
    rng = random.Random(1000 * n + m)
    for _ in range(20):
        pen = _random_pencil(n, m, rng)
        assert apply(pen.canonical, pen.f).is_zero() and apply(pen.canonical, pen.g).is_zero()
        an = analyze(pen)
        assert an.Z.stable_value == an.expected_z_length
        assert an.gamma.length == an.B.stable_value + an.Z.stable_value
        assert len(an.singular_params()) <= an.expected_z_length


@settings(max_examples=15)
@given(st.sampled_from([(1, 2), (2, 2), (1, 1)]), st.integers(2, 3), st.randoms(use_true_random=False))
def test_member_unions_are_annihilated_and_theorem_agrees(nm, k, rnd):
    rng = random.Random(rnd.random())
    pen = _random_pencil(*nm, rng)
    params = set()
    while len(params) < k:
        params.add(normalize_param((rng.randrange(65537), rng.randrange(1, 65537)), F65537))
    sel = member_union(pen, sorted(params))
    assert apply(pen.canonical, sel.product).is_zero()
    for mem in sel.members:
        assert apply(pen.canonical, mem).is_zero()
    try:
        rep = theorem35_check(pen, sel.product, sel)
    except NotReduced:
        return  # a drawn member happened to be singular along a component
    assert rep.agree
