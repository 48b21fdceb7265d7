"""Random pencils: lengths of B, Z and the eigenscheme, plus singular members."""
import json
import random
from dataclasses import asdict, dataclass

from freecurves.errors import Refusal
from freecurves.gradedlin import monomial_basis
from freecurves.pencil import Pencil, analyze
from freecurves.polys import Poly
from freecurves.scalars import field_from_spec

from _config import parse_config


@dataclass
class Config:
    shapes: str = "2x2,2x3,3x3"
    trials: int = 20
    field: str = "fp:65537"
    seed: int = 0
    json: bool = False


def main(cfg: Config):
    K = field_from_spec(cfg.field)
    rng = random.Random(cfg.seed)
    out = []
    for shape in cfg.shapes.split(","):
        n, m = (int(s) for s in shape.split("x"))
        stats = {"shape": [n, m], "expected_z": (n - 1) ** 2 + (n - 1) * (m - 1) + (m - 1) ** 2,
                 "finite": 0, "z_ok": 0, "decomposition_ok": 0, "refused": 0,
                 "with_singular_members": 0}
        for _ in range(cfg.trials):
            f = Poly(K, {mm: K.coerce(rng.randrange(K.p)) for mm in monomial_basis(n)})
            g = Poly(K, {mm: K.coerce(rng.randrange(K.p)) for mm in monomial_basis(m)})
            try:
                an = analyze(Pencil(f, g))
            except Refusal:
                stats["refused"] += 1
                continue
            stats["finite"] += 1
            stats["z_ok"] += an.Z.stable_value == stats["expected_z"]
            stats["decomposition_ok"] += bool(an.decomposition_holds)
            stats["with_singular_members"] += bool(an.singular_members)
        out.append(stats)
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "results": out}, indent=2))
        return
    for s in out:
        print(f"(n,m)={tuple(s['shape'])}: finite {s['finite']}, len Z = {s['expected_z']} in {s['z_ok']}, "
              f"deg G = deg B + deg Z in {s['decomposition_ok']}, refused {s['refused']}, "
              f"rational singular members in {s['with_singular_members']}")


if __name__ == "__main__":
    main(parse_config(Config))
