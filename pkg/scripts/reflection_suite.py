"""Time the reflection-arrangement suite: F*G1, F*G1*G2, item (3), F*G1*..*G5."""
import json
import time
from dataclasses import asdict, dataclass

from freecurves import fixtures as fx
from freecurves.derivations import decide_freeness
from freecurves.scalars import field_from_spec

from _config import parse_config


@dataclass
class Config:
    n: int = 2
    field: str = "q"
    k: int = 3
    seed: int = fx.DEFAULT_SEED
    json: bool = False


def main(cfg: Config):
    K = field_from_spec(cfg.field)
    rows = []
    t_all = time.perf_counter()
    for label, curve, want in fx.reflection_theorem_suite(cfg.n, cfg.k, K, cfg.seed):
        t0 = time.perf_counter()
        v = decide_freeness(curve)
        got = tuple(sorted(v.exponents)) if v.is_free else None
        rows.append({"curve": label, "degree": curve.degree, "expected": want, "observed": got,
                     "ok": got == (tuple(sorted(want)) if want else None),
                     "seconds": round(time.perf_counter() - t0, 3)})
    total = round(time.perf_counter() - t_all, 3)
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows, "seconds": total}, indent=2))
        return
    print(f"reflection suite n={cfg.n} over {K.spec}, k={cfg.k}")
    for r in rows:
        print(f"  {r['curve']:<48} deg {r['degree']:>3}  expected {str(r['expected']):<10}"
              f" observed {str(r['observed']):<10} {'ok' if r['ok'] else 'MISMATCH'}  {r['seconds']}s")
    print(f"total {total}s")


if __name__ == "__main__":
    main(parse_config(Config))
