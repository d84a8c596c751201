"""Reflection-class census of Aut_Hopf(DG) and the Weyl double cosets of S_n x S_n in S_2n."""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ddouble import autdg, bruhat, groups


@dataclass
class CensusConfig:
    groups: list = field(default_factory=lambda: ["C2", "C3", "C2xC2"])
    variant: str = "double"
    orbits: bool = False
    weyl_n: int = 2
    out: str = "results/census.json"


def run(cfg):
    rows = []
    for name in cfg.groups:
        G = groups.construct(name)
        t0 = time.time()
        elems = autdg.enumerate_all(G)
        rep = bruhat.census(G, elems, cfg.variant, orbits=cfg.orbits)
        rep["seconds"] = round(time.time() - t0, 2)
        rows.append(rep)
        print(f"{name}: |Aut|={rep['order']} classes={rep['classes']} expected={rep.get('expected_sizes')}")
    weyl = bruhat.weyl_census(cfg.weyl_n)
    print(f"S{cfg.weyl_n} x S{cfg.weyl_n} in S{2 * cfg.weyl_n}: {weyl}")
    return {"config": asdict(cfg), "census": rows, "weyl": weyl}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", nargs="+", default=CensusConfig().groups)
    ap.add_argument("--variant", default="double")
    ap.add_argument("--orbits", action="store_true")
    ap.add_argument("--weyl-n", type=int, default=2)
    ap.add_argument("--out", default=CensusConfig.out)
    a = ap.parse_args()
    cfg = CensusConfig(a.groups, a.variant, a.orbits, a.weyl_n, a.out)
    result = run(cfg)
    Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
    Path(cfg.out).write_text(json.dumps(result, indent=2, sort_keys=True))
