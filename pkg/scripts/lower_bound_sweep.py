"""Run every corpus algorithm on the indistinguishable pair for a grid of (k, l)."""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from kpartial.gadgets import indist_pair
from kpartial.local import CORPUS, indistinguishability_report, lower_bound_demo, make_algorithm, max_rounds, pair_networks


@dataclass
class Config:
    ks: list = field(default_factory=lambda: [3, 4])
    ls: list = field(default_factory=lambda: [4, 6, 8])
    algorithms: list = field(default_factory=lambda: sorted(CORPUS))


def run(cfg: Config) -> dict:
    rows = []
    for k in cfg.ks:
        for l in cfg.ls:
            pair = indist_pair(k, l)
            n1, n2 = pair_networks(pair)
            ids = [n1.ids[h] for h in pair.endpoints]
            views = {
                t: indistinguishability_report(n1, n2, ids, t)["verdict"]
                for t in (pair.radius, pair.radius + 1, 3 * l // 2 - 1)
            }
            for name in cfg.algorithms:
                start = time.perf_counter()
                v = lower_bound_demo(k, l, make_algorithm(name, k, max_rounds(l)), pair=pair)
                rows.append({
                    "k": k, "l": l, "n": pair.g1.n, "algorithm": name, "rounds": v.rounds,
                    "agreement": v.endpoint_agreement, "failed": v.failed, "views": views,
                    "seconds": round(time.perf_counter() - start, 2),
                })
    return {"config": asdict(cfg), "runs": rows}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ks", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--ls", type=int, nargs="+", default=[4, 6, 8])
    ap.add_argument("--algorithms", nargs="+", default=sorted(CORPUS), choices=sorted(CORPUS))
    a = ap.parse_args()
    print(json.dumps(run(Config(a.ks, a.ls, a.algorithms)), indent=2))
