#!/usr/bin/env python3
"""
Compare the closed-form expansion count with explicit enumeration on random
groupoids (disjoint unions of pair groupoids times small groups).
"""

import argparse
import random
import time
from dataclasses import dataclass

from pargroupoid.br import br_count, enumerate_br
from pargroupoid.fixtures import random_groupoid
from pargroupoid.groupoid import connected_components, validate


@dataclass
class CountConfig:
    n: int = 200
    seed: int = 0
    max_components: int = 3
    max_objects: int = 3
    max_order: int = 4


def run(cfg):
    rng = random.Random(cfg.seed)
    mismatches = []
    largest = (0, 0)
    t0 = time.perf_counter()
    for i in range(cfg.n):
        G = random_groupoid(rng, cfg.max_components, cfg.max_objects, cfg.max_order)
        assert validate(G).ok
        predicted = br_count(G)
        got = len(enumerate_br(G, cap=float("inf")))
        if predicted != got:
            mismatches.append((i, predicted, got))
        largest = max(largest, (got, G.n_arrows))
        if i < 5:
            comps = [len(c.arrows) for c in connected_components(G)]
            print(f"  sample {i}: |G|={G.n_arrows} components={comps} |BR|={got}")
    return mismatches, largest, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=CountConfig.n)
    ap.add_argument("--seed", type=int, default=CountConfig.seed)
    ap.add_argument("--max-components", type=int, default=CountConfig.max_components)
    ap.add_argument("--max-objects", type=int, default=CountConfig.max_objects)
    ap.add_argument("--max-order", type=int, default=CountConfig.max_order)
    cfg = CountConfig(**{k: v for k, v in vars(ap.parse_args()).items()})
    print(cfg)
    mismatches, (br_max, arrows), secs = run(cfg)
    print(f"{cfg.n - len(mismatches)}/{cfg.n} match; largest |BR|={br_max} (|G|={arrows}); {secs:.2f}s")
    for m in mismatches:
        print("  mismatch", m)
    raise SystemExit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
