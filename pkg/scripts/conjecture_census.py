"""Experimental cardinalities of H^2_L(DG*), H^2_c(k^G), P_c(kG, k^G) and H^2_inv(G)."""

import argparse
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ddouble import groups, lazy


@dataclass
class ConjectureConfig:
    groups: list = field(default_factory=lambda: ["C2", "C3", "C4", "C2xC2", "S3", "C6"])
    conductor: int = None
    out: str = "results/conjecture.json"


def run(cfg):
    rows = []
    for name in cfg.groups:
        rep = lazy.conjecture_census(groups.construct(name), cfg.conductor).to_json()
        rows.append(rep)
        print(f"{name}@{rep['conductor']}: H2_L={rep['H2_L']} product={rep['product']} "
              f"({rep['H2_c']}*{rep['P_c']}*{rep['H2_inv']}) {rep['method']}")
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", nargs="+", default=ConjectureConfig().groups)
    ap.add_argument("--conductor", type=int)
    ap.add_argument("--out", default=ConjectureConfig.out)
    a = ap.parse_args()
    cfg = ConjectureConfig(a.groups, a.conductor, a.out)
    rows = run(cfg)
    Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
    Path(cfg.out).write_text(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2, sort_keys=True))
