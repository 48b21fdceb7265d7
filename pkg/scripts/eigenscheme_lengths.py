"""Eigenscheme lengths of random derivations against the count 1 + n + n^2."""
import json
import random
from collections import Counter
from dataclasses import asdict, dataclass

from freecurves.derivations import Derivation
from freecurves.eigenscheme import eigenscheme_of
from freecurves.gradedlin import monomial_basis
from freecurves.polys import Poly
from freecurves.scalars import field_from_spec

from _config import parse_config


@dataclass
class Config:
    max_degree: int = 4
    trials: int = 20
    field: str = "fp:65537"
    seed: int = 0
    sparsity: float = 1.0  # probability that a monomial gets a nonzero coefficient
    json: bool = False


def random_form(K, d, rng, sparsity):
    terms = {}
    for m in monomial_basis(d):
        if rng.random() < sparsity:
            terms[m] = rng.randrange(K.p) if K.characteristic else rng.randint(-5, 5)
    return Poly(K, {m: K.coerce(c) for m, c in terms.items()})


def main(cfg: Config):
    K = field_from_spec(cfg.field)
    rng = random.Random(cfg.seed)
    table = {}
    for n in range(1, cfg.max_degree + 1):
        seen = Counter()
        for _ in range(cfg.trials):
            d = Derivation([random_form(K, n, rng, cfg.sparsity) for _ in range(3)])
            if d.is_zero() or d.degree != n:
                seen["degenerate"] += 1
                continue
            G = eigenscheme_of(d)
            seen[G.length if G.is_finite else G.status] += 1
        table[n] = {"expected": 1 + n + n * n, "observed": dict(seen)}
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "lengths": table}, indent=2, default=str))
        return
    for n, row in table.items():
        print(f"n={n} expected {row['expected']:>3}  observed {row['observed']}")


if __name__ == "__main__":
    main(parse_config(Config))
