"""Success rates of kernel_trivialize on random sigma = d(mu) and the symmetric splitting on k^G."""

import argparse
import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ddouble import galois, groups, lazy


@dataclass
class LazyConfig:
    groups: list = field(default_factory=lambda: ["C2xC2", "S3", "C4"])
    samples: int = 50
    seed: int = 0
    symmetric_groups: list = field(default_factory=lambda: ["S3", "D4"])
    symmetric_conductor: int = 4
    out: str = "results/lazy.json"


def trivialize_rates(cfg):
    rows = []
    for name in cfg.groups:
        G = groups.construct(name)
        H = lazy.host(G)
        rng = random.Random(cfg.seed)
        outcome = Counter()
        t0 = time.time()
        for i in range(cfg.samples):
            mu = lazy.random_almost_lazy(G, rng, lazy=(i % 2 == 0))
            sigma = lazy.coboundary(H, mu)
            try:
                w = lazy.kernel_trivialize(sigma, rng)
            except lazy.LazyError as e:
                outcome[type(e).__name__] += 1
                continue
            ok = lazy.tables_equal(lazy.coboundary(H, w.cochain.values), sigma)
            outcome["split" if ok else "wrong"] += 1
            outcome["lazy witness" if w.lazy else "non-lazy witness"] += 1
        rows.append({"group": name, "samples": cfg.samples, "outcome": dict(outcome),
                     "seconds": round(time.time() - t0, 2)})
        print(f"{name}: {dict(outcome)}")
    return rows


def symmetric_splitting(cfg):
    rows = []
    for name in cfg.symmetric_groups:
        G = groups.construct(name)
        routes = Counter()
        for S, omega, alpha in galois.symmetric_lazy_alphas(G, cfg.symmetric_conductor):
            try:
                w = galois.symmetric_kG_check(alpha)
                routes[f"{w.route}@{w.conductor}"] += 1
            except lazy.SolveFailed:
                routes["inconclusive"] += 1
        rows.append({"group": name, "routes": dict(routes)})
        print(f"{name}: {dict(routes)}")
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=LazyConfig.samples)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=LazyConfig.out)
    a = ap.parse_args()
    cfg = LazyConfig(samples=a.samples, seed=a.seed, out=a.out)
    result = {"config": asdict(cfg), "trivialize": trivialize_rates(cfg),
              "symmetric": symmetric_splitting(cfg)}
    Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
    Path(cfg.out).write_text(json.dumps(result, indent=2, sort_keys=True))
