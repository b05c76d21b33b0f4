"""Search for a small graph with delta_E = k, no (k+1)-clique and no k-partial k-coloring."""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from typing import Optional

from kpartial import io
from kpartial.graph import delta_edge, delta_max
from kpartial.search import search_obstructions


@dataclass
class Config:
    k: int = 3
    max_n: int = 7
    max_degree: Optional[int] = 4
    budget: int = 100_000
    dot: Optional[str] = None  # write the hit as DOT here


def run(cfg: Config) -> dict:
    start = time.perf_counter()
    res = search_obstructions(cfg.k, cfg.max_n, max_degree=cfg.max_degree, budget=cfg.budget)
    out = {
        "config": asdict(cfg),
        "examined": res.examined,
        "prefiltered": res.prefiltered,
        "budget_failures": len(res.budget_failures),
        "seconds": round(time.perf_counter() - start, 2),
    }
    G = res.smallest
    if G is not None:
        out["graph"] = {**io.graph_to_json(G), "delta_edge": delta_edge(G), "delta": delta_max(G)}
        if cfg.dot:
            with open(cfg.dot, "w") as fh:
                fh.write(io.to_dot(G, "obstruction"))
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--max-degree", type=int, default=4, help="0 disables the filter")
    ap.add_argument("--budget", type=int, default=100_000)
    ap.add_argument("--dot")
    a = ap.parse_args()
    cfg = Config(a.k, a.max_n, a.max_degree or None, a.budget, a.dot)
    print(json.dumps(run(cfg), indent=2))
