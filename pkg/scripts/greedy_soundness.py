"""Run the sequential greedy on random graphs and verify every output."""

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass

from kpartial.coloring import PartialSpec, greedy_partial, verify_partial
from kpartial.graph import build_graph


@dataclass
class Config:
    trials: int = 10_000
    max_n: int = 200
    max_k: int = 8
    mean_degree: float = 16.0  # edge probability is drawn from [0, mean_degree / n]
    seed: int = 1


def run(cfg: Config) -> dict:
    rng = random.Random(cfg.seed)
    start = time.perf_counter()
    invalid = []
    for t in range(cfg.trials):
        n = rng.randint(1, cfg.max_n)
        p = rng.uniform(0, min(1.0, cfg.mean_degree / n))
        G = build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        k = rng.randint(0, cfg.max_k)
        if verify_partial(G, greedy_partial(G, k), PartialSpec(k, k + 1)):
            invalid.append(t)
    return {"config": asdict(cfg), "invalid_trials": invalid, "seconds": round(time.perf_counter() - start, 2)}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in asdict(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(val), default=val)
    print(json.dumps(run(Config(**vars(ap.parse_args()))), indent=2))
