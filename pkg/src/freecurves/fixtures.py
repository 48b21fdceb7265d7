"""Deterministic constructors for the named curves, pencils and derivations.

Every fixture is a pure function of (name, parameters, field, seed).
Expected outcomes are stored next to the payload with an ``origin`` tag:
``reported`` for values stated in the source literature, ``computed`` for
values obtained here by an independent route.  Nothing here stores a
certificate; the checkers recompute everything.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Tuple

from .derivations import Derivation, der0_basis, squarefree_line
from .eigenscheme import eigenscheme_of
from .errors import Refusal
from .gradedlin import GradedIdeal, membership_certificate
from .parsing import parse_poly
from .polys import Poly, det3, variables, wedge
from .scalars import QQ, Field, GF, field_from_spec

DEFAULT_SEED = 1


@dataclass
class Expected:
    value: object
    origin: str  # "reported" | "computed"
    note: str = ""

    def to_json(self):
        v = self.value
        if isinstance(v, tuple):
            v = list(v)
        d = {"value": v, "origin": self.origin}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Fixture:
    name: str
    params: dict
    field: Field
    payload: Dict[str, object]
    expected: Dict[str, Expected]
    log: List[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "params": self.params, "field": self.field.spec,
                "payload": {k: _emit(v) for k, v in self.payload.items()},
                "expected": {k: e.to_json() for k, e in self.expected.items()},
                "log": self.log}


def _emit(v):
    if isinstance(v, Poly):
        return str(v)
    if isinstance(v, Derivation):
        return v.to_text()
    if isinstance(v, (list, tuple)):
        return [_emit(w) for w in v]
    if isinstance(v, dict):
        return {k: _emit(w) for k, w in v.items()}
    return v


def _P(text: str, field: Field) -> Poly:
    return parse_poly(text, field)


def _prod(polys, field: Field) -> Poly:
    out = Poly.const(field, 1)
    for p in polys:
        out = out * p
    return out


def _rep(v):
    return Expected(v, "reported")


def _comp(v):
    return Expected(v, "computed")


# --- line arrangements and pencils -------------------------------------------------------

def ceva(field: Field = QQ) -> Fixture:
    curve = _P("x*y*z*(x-y)*(x-z)*(y-z)", field)
    f, g = _P("(x-y)*z", field), _P("y*(x-z)", field)
    return Fixture("ceva", {}, field, {"curve": curve, "f": f, "g": g},
                   {"exponents": _rep((2, 3)), "gamma_finite": _comp(True),
                    "gamma_length": _comp(7), "tjurina_total": _comp(19)})


def _cube_root_of_unity(field: Field):
    p = field.p
    if (p - 1) % 3:
        raise ValueError(f"GF({p}) has no primitive cube root of unity")
    for a in range(2, p):
        w = pow(a, (p - 1) // 3, p)
        if w != 1:
            return w
    raise AssertionError("unreachable")


def hesse(field: Field = QQ) -> Fixture:
    """Hesse pencil (x^3+y^3+z^3, xyz) and the arrangement of its four triangles.

    Over Q the arrangement is xyz*(f^3 - 27 g^3), the product of f - 3*eps*g
    over the cube roots of unity with the cube roots eliminated.  Over GF(p)
    with p = 1 mod 3 the twelve lines are also built one by one and the two
    forms are compared.
    """
    f, g = _P("x^3+y^3+z^3", field), _P("x*y*z", field)
    arrangement = g * (f ** 3 - (g ** 3).scale(field.coerce(27)))
    payload = {"f": f, "g": g, "arrangement": arrangement}
    log = []
    if field.kind == "Fp" and (field.p - 1) % 3 == 0:
        w = _cube_root_of_unity(field)
        x, y, z = variables(field)
        lines = [x, y, z]
        for k in range(3):
            for j in range(3):
                lines.append(x + y.scale(pow(w, (j + k) % 3, field.p)) + z.scale(pow(w, (2 * j) % 3, field.p)))
        factored = _prod(lines, field)
        if factored != arrangement:
            raise AssertionError("factored Hesse arrangement differs from the expanded form")
        payload["lines"] = lines
        log.append("twelve lines multiply out to the expanded arrangement")
    return Fixture("hesse", {}, field, payload,
                   {"exponents": _rep((4, 7)), "gamma_length": _rep(21),
                    "base_length": _comp(9), "z_length": _comp(12)}, log)


def fermat(n: int = 3, field: Field = QQ) -> Fixture:
    curve = _P(f"(x^{n}-y^{n})*(x^{n}-z^{n})*(y^{n}-z^{n})", field)
    a, b = sorted((n + 1, 2 * n - 2))
    return Fixture("fermat", {"n": n}, field, {"curve": curve},
                   {"exponents": _rep((a, b))})


def sextic_pencil(field: Field = QQ) -> Fixture:
    f, g = _P("x^2+y^2+z^2", field), _P("x*y*z", field)
    c27 = field.coerce(27)
    member = f ** 3 - (g ** 2).scale(c27)
    return Fixture("sextic_pencil", {}, field,
                   {"f": f, "g": g, "singular_member": member,
                    "curve_xyz": _P("x*y*z", field) * member,
                    "curve_yz": _P("y*z", field) * member,
                    "singular_points": [[1, 1, 1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]]},
                   {"gamma_length": _rep(13), "z_length": _rep(7), "base_length": _rep(6),
                    "singular_param": _rep((1, -27)),
                    "exponents_xyz": _rep((3, 5)), "exponents_yz": _rep((3, 4))})


def osculating_conics(field: Field = QQ) -> Fixture:
    f, g = _P("x*z", field), _P("z^2-x*y", field)
    x = _P("x", field)
    u, v, w = _P("x*(z^2+x*y)", field), _P("x^2*z", field), _P("z^3", field)
    return Fixture("osculating_conics", {}, field,
                   {"f": f, "g": g, "u": u, "v": v, "w": w,
                    "fg": f * g,
                    "g_fpg_fmg": g * (f + g) * (f - g),
                    "x_fpg_fmg": x * (f + g) * (f - g),
                    "f_fpg_fmg": f * (f + g) * (f - g),
                    "two_conics": g * (f + g),
                    "tangency_point": [0, 1, 0]},
                   {"gamma_length": _rep(7), "exponents_fg": _rep((1, 2)),
                    "exponents_g_fpg_fmg": _rep((2, 3)), "exponents_f_fpg_fmg": _rep((2, 3)),
                    "exponents_x_fpg_fmg": _comp((2, 2)),
                    "tau_mu_g_fpg_fmg": _rep((15, 16)), "tau_mu_x_fpg_fmg": _rep((11, 12)),
                    "two_conics_free": _rep(False),
                    "fg_identity": _rep("x*w - y*v"),
                    "g_fpg_fmg_identity": _rep("w^2 - v^2 - y*z*(x-4*y+3*z)*v - x*y^2*u"),
                    # the reported combination misses by a nonzero sextic; the
                    # membership itself still holds with other coefficients
                    "g_fpg_fmg_identity_expands": Expected(
                        False, "computed",
                        "reported combination differs from g(f+g)(f-g) by "
                        "x^4z^2+2x^3y^3-6x^2y^2z^2+3x^2yz^3+x^2z^4+3xyz^4-2z^6"),
                    "g_fpg_fmg_in_uvw": _comp(True)})


def conic_pencils(field: Field = QQ) -> Fixture:
    """Conic pencils by base-locus type: four points, simple+triple, quadruple."""
    return Fixture("conic_pencils", {}, field,
                   {"four_points": [_P("x^2-y^2", field), _P("y^2-z^2", field)],
                    "simple_triple": [_P("x*z", field), _P("z^2-x*y", field)],
                    "quadruple": [_P("x", field), _P("y^2-x*z", field)]},
                   {"four_points_lengths": _rep((4, 3, 7)),
                    "simple_triple_lengths": _rep((4, 3, 7)),
                    "quadruple_gamma_length": _rep(3),
                    "quadruple_two_members": _rep((1, 2)),
                    "simple_triple_three_members": _rep((2, 3))})


def remark_quintic(field: Field = QQ) -> Fixture:
    """A quintic free with exponents (2,2) and delta = x*mu + y*nu of degree 3.

    (mu, nu) is a basis of Der_0 in degree 2; the first basis change in a fixed
    order that makes the eigenscheme of delta finite is used.
    """
    curve = _P("x*y*z*(x-y)*(x-z)", field)
    B = der0_basis(curve, 2)
    x, y = _P("x", field), _P("y", field)
    order = [0, 1, -1, 2, -2]
    log = []
    for s in order:
        for t in order:
            if s * t == 1:
                continue
            mu = B[0] + B[1] * Poly.const(field, s)
            nu = B[1] + B[0] * Poly.const(field, t)
            delta = mu * x + nu * y
            if eigenscheme_of(delta).is_finite:
                log.append(f"basis change (s, t) = ({s}, {t})")
                return Fixture("remark_quintic", {}, field,
                               {"curve": curve, "mu": mu, "nu": nu, "delta": delta},
                               {"exponents": _rep((2, 2)), "contains_gamma": _rep(False),
                                "gamma_length": _comp(13)}, log)
            log.append(f"basis change ({s}, {t}): eigenscheme not finite")
    raise AssertionError("no basis change gives a finite eigenscheme")


def power_derivation(n: int = 3, field: Field = QQ) -> Fixture:
    """x^n d/dx + y^n d/dy + z^n d/dz."""
    d = Derivation([_P(f"x^{n}", field), _P(f"y^{n}", field), _P(f"z^{n}", field)])
    return Fixture("power_derivation", {"n": n}, field, {"derivation": d},
                   {"gamma_length": _rep(1 + n + n * n)})


# --- reflection arrangement and its net ---------------------------------------------------

def _reflection_parts(n: int, field: Field):
    F = _P(f"x*y*z*(x^{n}-y^{n})*(x^{n}-z^{n})*(y^{n}-z^{n})", field)
    mu = Derivation([_P(f"x^{n + 1}", field), _P(f"y^{n + 1}", field), _P(f"z^{n + 1}", field)])
    delta = Derivation([_P(f"x*(x^{n}-y^{n})*(x^{n}-z^{n})", field),
                        _P(f"y*(x^{n}-y^{n})*(y^{n}-z^{n})", field),
                        _P(f"z*(x^{n}-z^{n})*(y^{n}-z^{n})", field)])
    f = _P(f"y*z*(y^{n}-z^{n})", field)
    g = _P(f"x*z*(z^{n}-x^{n})", field)
    h = _P(f"x*y*(x^{n}-y^{n})", field)
    return F, mu, delta, (f, g, h)


def _non_proportional(d1: Derivation, d2: Derivation) -> bool:
    return any(not c.is_zero() for c in wedge(d1.coeffs, d2.coeffs))


def _net_derivations(coeffs, net):
    f, g, h = net
    a, b, c = (Poly.const(f.field, k) for k in coeffs)
    dfg = Derivation(wedge(f.gradient(), g.gradient()))
    dfh = Derivation(wedge(f.gradient(), h.gradient()))
    dgh = Derivation(wedge(g.gradient(), h.gradient()))
    return dfg * b + dfh * c, dfh * a + dgh * b


def reflection_net(n: int = 2, field: Field = QQ, seed: int = DEFAULT_SEED,
                   members: int = 5) -> Fixture:
    """F = xyz(x^n-y^n)(x^n-z^n)(y^n-z^n), mu, delta, the net (f, g, h) and
    general net members G_i = a f + b g + c h.

    Candidates (a, b, c) come from random.Random(seed) with entries in -3..3.
    A candidate is kept when its two net derivations are non-proportional and
    F*G_1*...*G_i is certified reduced by a squarefree line restriction;
    every attempt is logged.
    """
    F, mu, delta, net = _reflection_parts(n, field)
    rng = random.Random(seed)
    G: List[Poly] = []
    coeffs: List[Tuple[int, int, int]] = []
    log: List[str] = []
    cur = F
    attempts = 0
    while len(G) < members:
        attempts += 1
        if attempts > 500:
            raise AssertionError("could not draw general net members")
        c = tuple(rng.randint(-3, 3) for _ in range(3))
        Gi = net[0].scale(field.coerce(c[0])) + net[1].scale(field.coerce(c[1])) + net[2].scale(field.coerce(c[2]))
        if Gi.is_zero():
            log.append(f"{c}: zero")
            continue
        d1, d2 = _net_derivations(c, net)
        if not _non_proportional(d1, d2):
            log.append(f"{c}: net derivations proportional")
            continue
        if squarefree_line(cur * Gi, tries=8, seed=attempts) is None:
            log.append(f"{c}: product not certified reduced")
            continue
        log.append(f"{c}: accepted as G{len(G) + 1}")
        G.append(Gi)
        coeffs.append(c)
        cur = cur * Gi
    return Fixture("reflection_net", {"n": n, "seed": seed}, field,
                   {"F": F, "mu": mu, "delta": delta, "net": list(net), "G": G,
                    "G_coefficients": [list(c) for c in coeffs]},
                   {"saito_c": Expected(-1, "computed",
                                        "reported as +1; the sign depends on the column order"),
                    "net_jacobian_factor": Expected(-(n + 1) * (n + 2), "computed",
                                                    f"reported as n(n+1) = {n * (n + 1)}"),
                    "gamma_mu_length": _rep(n * n + 3 * n + 3),
                    "F_exponents": _rep((n + 1, 2 * n + 1))}, log)


def reflection_theorem_suite(n: int = 2, k: int = 3, field: Field = QQ,
                             seed: int = DEFAULT_SEED) -> List[Tuple[str, Poly, Optional[Tuple[int, int]]]]:
    """Curves F*prod(G) with their expected exponents (None means not free)."""
    fx = reflection_net(n, field, seed)
    F, G = fx.payload["F"], fx.payload["G"]
    out = [("F*G1", F * G[0], (2 * n + 2, 2 * n + 2)),
           ("F*G1*G2", F * G[0] * G[1], (2 * n + 2, 3 * n + 4))]
    # item (3): k members a_i*G1 + b_i*G2 of the pencil spanned by G1, G2
    rng = random.Random(seed + 1000)
    pairs: List[Tuple[int, int]] = []
    cur = F
    seen = set()
    tries = 0
    while len(pairs) < k:
        tries += 1
        if tries > 500:
            raise AssertionError("could not draw pencil members")
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        if (a, b) == (0, 0):
            continue
        key = _projective_key(a, b)
        if key in seen:
            continue
        M = G[0].scale(field.coerce(a)) + G[1].scale(field.coerce(b))
        if squarefree_line(cur * M, tries=8, seed=tries) is None:
            continue
        seen.add(key)
        pairs.append((a, b))
        cur = cur * M
    exps3 = tuple(sorted((2 * n + 2, (k + 1) * n + 2 * k)))
    out.append((f"F*prod(a_i*G1+b_i*G2), k={k}, pairs={pairs}", cur, exps3))
    out.append(("F*G1*G2*G3", F * G[0] * G[1] * G[2], (3 * n + 4, 3 * n + 4)))
    out.append(("F*G1*...*G4", F * G[0] * G[1] * G[2] * G[3], (3 * n + 5, 4 * n + 5)))
    out.append(("F*G1*...*G5", F * G[0] * G[1] * G[2] * G[3] * G[4], None))
    return out


def _projective_key(a: int, b: int):
    from math import gcd
    g = gcd(a, b)
    a, b = a // g, b // g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return a, b


# --- registry -------------------------------------------------------------------------

REGISTRY: Dict[str, Callable[..., Fixture]] = {
    "ceva": lambda field=QQ, **kw: ceva(field),
    "hesse": lambda field=QQ, **kw: hesse(field),
    "fermat": lambda field=QQ, n=3, **kw: fermat(n, field),
    "sextic_pencil": lambda field=QQ, **kw: sextic_pencil(field),
    "osculating_conics": lambda field=QQ, **kw: osculating_conics(field),
    "conic_pencils": lambda field=QQ, **kw: conic_pencils(field),
    "remark_quintic": lambda field=QQ, **kw: remark_quintic(field),
    "power_derivation": lambda field=QQ, n=3, **kw: power_derivation(n, field),
    "reflection_net": lambda field=QQ, n=2, seed=DEFAULT_SEED, **kw: reflection_net(n, field, seed),
}


def fixture_names() -> List[str]:
    return sorted(REGISTRY)


def build(name: str, field: Field | str = QQ, **params) -> Fixture:
    if isinstance(field, str):
        field = field_from_spec(field)
    if name not in REGISTRY:
        raise Refusal(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
    return REGISTRY[name](field=field, **{k: v for k, v in params.items() if v is not None})


# --- conformance ----------------------------------------------------------------------

def _check(label, expected, observed) -> dict:
    ev = expected.value if isinstance(expected, Expected) else expected
    ov = list(observed) if isinstance(observed, tuple) else observed
    evn = list(ev) if isinstance(ev, tuple) else ev
    return {"check": label, "expected": evn, "observed": ov, "ok": evn == ov,
            "origin": expected.origin if isinstance(expected, Expected) else "computed"}


def _exps(v):
    return tuple(v.exponents) if v.is_free else None


def run_fixture(name: str, field: Field = QQ, **params) -> List[dict]:
    """Recompute every expected value of one fixture by the decision procedures."""
    from .derivations import decide_freeness, saito_scalar
    from .eigenscheme import theorem25_check
    from .pencil import Pencil, add_smooth_member, analyze, member_union, theorem35_check
    from .singularities import local_invariants, tjurina_report
    fx = build(name, field, **params)
    E, P = fx.expected, fx.payload
    out: List[dict] = []
    if name == "ceva":
        out.append(_check("exponents", E["exponents"], _exps(decide_freeness(P["curve"]))))
        an = analyze(Pencil(P["f"], P["g"]))
        out.append(_check("gamma_finite", E["gamma_finite"], an.gamma.is_finite))
        out.append(_check("gamma_length", E["gamma_length"], an.gamma.length))
        sel = member_union(an.pencil, [(1, 0), (0, 1), (1, -1)])
        rep = theorem35_check(an.pencil, P["curve"], sel, gamma=an.gamma)
        out.append(_check("pencil_theorem_agrees", True, rep.agree))
        tj = tjurina_report(P["curve"])
        out.append(_check("tjurina_total", E["tjurina_total"], tj.total))
        out.append(_check("tjurina_two_paths", True, tj.agree))
    elif name == "hesse":
        an = analyze(Pencil(P["f"], P["g"]))
        out.append(_check("gamma_length", E["gamma_length"], an.gamma.length))
        out.append(_check("base_length", E["base_length"], an.B.stable_value))
        out.append(_check("z_length", E["z_length"], an.Z.stable_value))
        out.append(_check("exponents", E["exponents"], _exps(decide_freeness(P["arrangement"]))))
    elif name == "fermat":
        out.append(_check("exponents", E["exponents"], _exps(decide_freeness(P["curve"]))))
    elif name == "sextic_pencil":
        an = analyze(Pencil(P["f"], P["g"]))
        out.append(_check("gamma_length", E["gamma_length"], an.gamma.length))
        out.append(_check("z_length", E["z_length"], an.Z.stable_value))
        out.append(_check("base_length", E["base_length"], an.B.stable_value))
        fld = fx.field
        params_found = [tuple(int(fld.signed(c)) if fld.kind == "Fp" else int(c) for c in s.param)
                        for s in an.singular_members]
        out.append(_check("singular_param", E["singular_param"],
                          params_found[0] if len(set(params_found)) == 1 else params_found))
        out.append(_check("singular_point_count", 4, len(an.singular_members)))
        sel = member_union(an.pencil, [(1, -27), (0, 1)])
        for key, curve in (("exponents_xyz", P["curve_xyz"]), ("exponents_yz", P["curve_yz"])):
            rep = theorem35_check(an.pencil, curve, sel, gamma=an.gamma)
            out.append(_check(key, E[key], _exps(rep.freeness)))
            out.append(_check(key + "_contains_gamma", True, rep.containment_side))
    elif name == "osculating_conics":
        pen = Pencil(P["f"], P["g"])
        an = analyze(pen)
        out.append(_check("gamma_length", E["gamma_length"], an.gamma.length))
        sel3 = member_union(pen, [(0, 1), (1, 1), (1, -1)])
        sel_f = member_union(pen, [(1, 0), (1, 1), (1, -1)])
        for key, curve, sel in (("exponents_fg", P["fg"], member_union(pen, [(1, 0), (0, 1)])),
                                ("exponents_g_fpg_fmg", P["g_fpg_fmg"], sel3),
                                ("exponents_f_fpg_fmg", P["f_fpg_fmg"], sel_f),
                                ("exponents_x_fpg_fmg", P["x_fpg_fmg"], sel_f)):
            rep = theorem35_check(pen, curve, sel, gamma=an.gamma)
            out.append(_check(key, E[key], _exps(rep.freeness)))
        for key, curve in (("tau_mu_g_fpg_fmg", P["g_fpg_fmg"]), ("tau_mu_x_fpg_fmg", P["x_fpg_fmg"])):
            li = local_invariants(curve, P["tangency_point"])
            out.append(_check(key, E[key], (li.tau, li.mu)))
        u, v, w = P["u"], P["v"], P["w"]
        X, Y, Z = (Poly.var(fx.field, c) for c in "xyz")
        out.append(_check("fg_identity", True, P["fg"] == X * w - Y * v))
        reported = w * w - v * v - Y * Z * _P("x-4*y+3*z", fx.field) * v - X * Y * Y * u
        out.append(_check("g_fpg_fmg_identity_expands", E["g_fpg_fmg_identity_expands"],
                          reported == P["g_fpg_fmg"]))
        cert = membership_certificate(P["g_fpg_fmg"], GradedIdeal([u, v, w], fx.field))
        out.append(_check("g_fpg_fmg_in_uvw", E["g_fpg_fmg_in_uvw"], cert is not None))
        two = P["two_conics"]
        out.append(_check("two_conics_free", E["two_conics_free"], decide_freeness(two).is_free))
    elif name == "conic_pencils":
        for key in ("four_points", "simple_triple"):
            an = analyze(Pencil(*P[key]))
            out.append(_check(key + "_lengths", E[key + "_lengths"],
                              (an.B.stable_value, an.Z.stable_value, an.gamma.length)))
        pen = Pencil(*P["quadruple"])
        an = analyze(pen)
        out.append(_check("quadruple_gamma_length", E["quadruple_gamma_length"], an.gamma.length))
        sel = member_union(pen, [(0, 1), (1, 1)])
        rep = theorem35_check(pen, sel.product, sel, gamma=an.gamma)
        out.append(_check("quadruple_two_members", E["quadruple_two_members"], _exps(rep.freeness)))
        pen2 = Pencil(*P["simple_triple"])
        sel2 = member_union(pen2, [(0, 1), (1, 1), (1, -1)])
        rep2 = theorem35_check(pen2, sel2.product, sel2)
        out.append(_check("simple_triple_three_members", E["simple_triple_three_members"],
                          _exps(rep2.freeness)))
        rep3 = add_smooth_member(pen, sel.product, sel, (1, 2), an)
        out.append(_check("quadruple_plus_smooth_member", True, rep3.free and rep3.containment))
    elif name == "remark_quintic":
        rep = theorem25_check(P["delta"], P["curve"])
        out.append(_check("exponents", E["exponents"], _exps(rep.freeness)))
        out.append(_check("contains_gamma", E["contains_gamma"], rep.containment_side))
        out.append(_check("gamma_length", E["gamma_length"], eigenscheme_of(P["delta"]).length))
    elif name == "power_derivation":
        out.append(_check("gamma_length", E["gamma_length"], eigenscheme_of(P["derivation"]).length))
    elif name == "reflection_net":
        F, mu, delta, net = P["F"], P["mu"], P["delta"], P["net"]
        out.append(_check("saito_c", E["saito_c"], _scalar_int(saito_scalar(F, mu, delta), fx.field)))
        J = det3(*(h.gradient() for h in net))
        ratio = J.exact_div(F)
        out.append(_check("net_jacobian_factor", E["net_jacobian_factor"],
                          _scalar_int(ratio.constant_value(), fx.field) if ratio is not None and ratio.is_constant() else None))
        out.append(_check("gamma_mu_length", E["gamma_mu_length"], eigenscheme_of(mu).length))
        out.append(_check("F_exponents", E["F_exponents"], _exps(decide_freeness(F))))
        n = fx.params["n"]
        for label, curve, exps in reflection_theorem_suite(n, 3, fx.field, fx.params["seed"]):
            out.append(_check(label, Expected(exps, "reported"), _exps(decide_freeness(curve))))
    return out


def _scalar_int(v, field: Field):
    if field.kind == "Fp":
        return field.signed(v)
    if field.kind == "QI":
        return int(v.re) if v.im == 0 and v.re.denominator == 1 else field.format(v)
    return int(v) if v.denominator == 1 else field.format(v)


def run_all(field: Field = QQ) -> dict:
    """Consolidated conformance report over every fixture."""
    plan = [("ceva", {}), ("hesse", {}), ("fermat", {"n": 3}), ("fermat", {"n": 4}),
            ("fermat", {"n": 5}), ("sextic_pencil", {}), ("osculating_conics", {}),
            ("conic_pencils", {}), ("remark_quintic", {}), ("power_derivation", {"n": 3}),
            ("reflection_net", {"n": 2})]
    results = []
    for name, params in plan:
        checks = run_fixture(name, field, **params)
        results.append({"fixture": name, "params": params, "checks": checks,
                        "ok": all(c["ok"] for c in checks)})
    return {"field": field.spec, "fixtures": results,
            "ok": all(r["ok"] for r in results)}
