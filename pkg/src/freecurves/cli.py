"""Command-line front end.

Every subcommand builds a JSON-ready dict; the text output is rendered from
that dict.  Exit codes: 0 when a verdict was computed (negative verdicts
included), 1 for a refusal (bad input or unmet precondition), 2 when two
independent computations disagree.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from . import __version__
from .derivations import Derivation, FreenessCertificate, decide_freeness
from .eigenscheme import contains_curve, eigenscheme_of
from .errors import ConsistencyError, FreeCurvesError, Refusal
from .parsing import parse_point, parse_poly
from .pencil import Pencil, add_smooth_member, analyze, member_union, theorem35_check
from .scalars import Field, field_from_spec
from . import fixtures as fx
from .singularities import local_invariants, tjurina_report

SCHEMA_VERSION = "1"


def _field(args) -> Field:
    return field_from_spec(args.field)


def _param(text: str, field: Field):
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"pencil parameter {text!r} must look like lam:mu")
    return tuple(field.parse(p.strip()) for p in parts)


# --- subcommands ----------------------------------------------------------------------

def cmd_free_check(args) -> dict:
    K = _field(args)
    f = parse_poly(args.f, K)
    v = decide_freeness(f)
    return {"curve": str(f), "degree": f.degree, "verdict": v.to_json()}


def cmd_eigenscheme(args) -> dict:
    K = _field(args)
    d = Derivation([parse_poly(t, K) for t in (args.P1, args.P2, args.P3)])
    G = eigenscheme_of(d, args.tmax)
    out = {"eigenscheme": G.to_json()}
    if args.contains:
        F = parse_poly(args.contains, K)
        out["containment"] = contains_curve(G, F).to_json()
    return out


def cmd_pencil_analyze(args) -> dict:
    K = _field(args)
    P = Pencil(parse_poly(args.f, K), parse_poly(args.g, K))
    return {"analysis": analyze(P, args.tmax, args.seed).to_json()}


def cmd_pencil_free(args) -> dict:
    K = _field(args)
    P = Pencil(parse_poly(args.f, K), parse_poly(args.g, K))
    sel = member_union(P, [_param(m, K) for m in args.members])
    F = parse_poly(args.divisor, K) if args.divisor else sel.product
    out = {"pencil": P.to_json(), "selection": sel.to_json(K)}
    if args.add:
        an = analyze(P, args.tmax, args.seed)
        rep = add_smooth_member(P, F, sel, _param(args.add, K), an)
        out["add_smooth_member"] = rep.to_json()
    else:
        out["theorem"] = theorem35_check(P, F, sel).to_json()
    return out


def cmd_tau(args) -> dict:
    K = _field(args)
    f = parse_poly(args.f, K)
    return {"curve": str(f), "tjurina": tjurina_report(f, args.tmax).to_json(K)}


def cmd_mu(args) -> dict:
    K = _field(args)
    f = parse_poly(args.f, K)
    p = parse_point(args.at, K)
    return {"curve": str(f), "local": local_invariants(f, p).to_json(K)}


def cmd_fixtures(args) -> dict:
    K = _field(args)
    if args.action == "list":
        return {"fixtures": fx.fixture_names()}
    if args.action == "emit":
        if not args.name:
            raise Refusal("fixtures emit needs a fixture name")
        return {"fixture": fx.build(args.name, K, n=args.n, seed=args.seed_fixture).to_json()}
    if args.action == "run":
        if not args.name:
            raise Refusal("fixtures run needs a fixture name")
        params = {k: v for k, v in (("n", args.n), ("seed", args.seed_fixture)) if v is not None}
        checks = fx.run_fixture(args.name, K, **params)
        return {"fixture": args.name, "checks": checks, "ok": all(c["ok"] for c in checks)}
    return {"conformance": fx.run_all(K)}


def _find_certificate(obj):
    """First dict carrying theta1/theta2 inside a report or bare certificate."""
    if isinstance(obj, dict):
        if "theta1" in obj and "theta2" in obj:
            return obj
        for v in obj.values():
            hit = _find_certificate(v)
            if hit is not None:
                return hit
    elif isinstance(obj, list):
        for v in obj:
            hit = _find_certificate(v)
            if hit is not None:
                return hit
    return None


def cmd_verify_cert(args) -> dict:
    with open(args.path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise Refusal(f"not valid JSON: {e}")
    data = _find_certificate(data)
    if data is None:
        raise Refusal("no freeness certificate found in the file")
    try:
        cert = FreenessCertificate.from_json(data)
    except (KeyError, TypeError) as e:
        raise Refusal(f"malformed certificate: missing or bad field {e}")
    cert.verify()
    return {"certificate": cert.to_json(), "valid": True}


COMMANDS = {
    "free-check": cmd_free_check,
    "eigenscheme": cmd_eigenscheme,
    "pencil-analyze": cmd_pencil_analyze,
    "pencil-free": cmd_pencil_free,
    "tau": cmd_tau,
    "mu": cmd_mu,
    "fixtures": cmd_fixtures,
    "verify-cert": cmd_verify_cert,
}


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommand copies suppress their defaults so flags given before the
    # subcommand are not overwritten
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=d("q"), help="q | qi | fp:P (default q)")
    common.add_argument("--tmax", type=int, default=d(None), help="override the Hilbert profile bound")
    common.add_argument("--json", action="store_true", default=d(False), help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=d(0), help="seed for randomized steps")
    common.add_argument("--timing", action="store_true", default=d(False),
                        help="include wall-clock timing in the report")
    return common


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="freecurves", parents=[_common(False)],
                                 description="Freeness of plane curves, eigenschemes and pencils.")
    common = _common(True)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("free-check", parents=[common], help="decide freeness via Saito's criterion")
    p.add_argument("f")
    p = sub.add_parser("eigenscheme", parents=[common], help="eigenscheme of P1 d/dx + P2 d/dy + P3 d/dz")
    p.add_argument("P1")
    p.add_argument("P2")
    p.add_argument("P3")
    p.add_argument("--contains", help="also test whether this curve contains the eigenscheme")
    p = sub.add_parser("pencil-analyze", parents=[common], help="base locus, Z, eigenscheme, singular members")
    p.add_argument("f")
    p.add_argument("g")
    p = sub.add_parser("pencil-free", parents=[common], help="freeness of a union of pencil members")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--members", nargs="+", required=True, help="parameters lam:mu")
    p.add_argument("--divisor", help="a divisor F of the member union (default: the union)")
    p.add_argument("--add", help="add one more member lam:mu and check freeness is kept")
    p = sub.add_parser("tau", parents=[common], help="total and local Tjurina numbers")
    p.add_argument("f")
    p = sub.add_parser("mu", parents=[common], help="Milnor and Tjurina numbers at a point")
    p.add_argument("f")
    p.add_argument("--at", required=True, help="projective point a,b,c")
    p = sub.add_parser("fixtures", parents=[common], help="list, emit or run the named examples")
    p.add_argument("action", choices=["list", "emit", "run", "run-all"])
    p.add_argument("name", nargs="?")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--fixture-seed", dest="seed_fixture", type=int, default=None)
    p = sub.add_parser("verify-cert", parents=[common], help="re-verify a freeness certificate by expansion")
    p.add_argument("path")
    return ap


def render_text(obj, indent: int = 0) -> str:
    """Plain-text view of a report dict."""
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar_text(v)}")
    elif isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            lines.append(pad + ", ".join(_scalar_text(v) for v in obj))
        else:
            for v in obj:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
    else:
        lines.append(pad + _scalar_text(obj))
    return "\n".join(lines)


def _scalar_text(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def _request(args) -> dict:
    skip = {"json", "timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    report = {"schema_version": SCHEMA_VERSION, "version": __version__,
              "request": _request(args)}
    t0 = time.perf_counter()
    code = 0
    try:
        report["status"] = "ok"
        report["result"] = COMMANDS[args.command](args)
    except ConsistencyError as e:
        code = 2
        report["status"] = "consistency-failure"
        report["error"] = {"type": type(e).__name__, "message": str(e), "detail": e.detail}
    except (Refusal, ValueError, OSError) as e:
        code = 1
        report["status"] = "refused"
        err = {"type": type(e).__name__, "message": str(e)}
        if getattr(e, "position", None) is not None:
            err["position"] = e.position
            err["expected"] = list(e.expected)
        report["error"] = err
    except FreeCurvesError as e:
        code = 1
        report["status"] = "refused"
        report["error"] = {"type": type(e).__name__, "message": str(e)}
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - t0, 6)
    if args.json:
        out = json.dumps(report, indent=2, sort_keys=True)
    else:
        out = render_text(report)
    stream = sys.stdout if code == 0 else sys.stderr
    print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
