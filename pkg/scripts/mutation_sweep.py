#!/usr/bin/env python3
"""
Seeded mutation sweep: single-entry corruptions of groupoid tables and of
valid partial representations, counting how many slip past the checkers.
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from pargroupoid.fixtures import FIXTURES, fixture
from pargroupoid.groupoid import mutate_groupoid, validate
from pargroupoid.partial_rep import check_partial_rep, default_trivial_rep, mutate_rep, rep_from_regular


@dataclass
class SweepConfig:
    per_fixture: int = 200
    seed: int = 0


def sweep(cfg):
    rng = random.Random(cfg.seed)
    stats = Counter()
    for name in FIXTURES:
        G = fixture(name)
        for _ in range(cfg.per_fixture):
            M, what = mutate_groupoid(G, rng)
            report = validate(M)
            stats["groupoid"] += 1
            if report.ok:
                stats["groupoid_missed"] += 1
                print(f"  missed {name}: {what}")
            for axiom in report.axioms():
                stats[f"groupoid:{axiom}"] += 1
        reps = [default_trivial_rep(G), rep_from_regular(G)]
        for k in range(cfg.per_fixture):
            bad, what = mutate_rep(reps[k % 2], rng)
            report = check_partial_rep(bad)
            stats["rep"] += 1
            if report.ok:
                stats["rep_missed"] += 1
                print(f"  missed {name}: {what}")
            for axiom in report.axioms():
                stats[f"rep:{axiom}"] += 1
    return stats


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-fixture", type=int, default=SweepConfig.per_fixture)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = ap.parse_args()
    stats = sweep(SweepConfig(args.per_fixture, args.seed))
    for key in sorted(stats):
        print(f"{key:28} {stats[key]}")
    missed = stats["groupoid_missed"] + stats["rep_missed"]
    raise SystemExit(1 if missed else 0)


if __name__ == "__main__":
    main()
