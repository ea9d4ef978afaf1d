#!/usr/bin/env python3
"""Run the K_par certificate on every fixture over several fields and tabulate."""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from pargroupoid.fields import parse_field
from pargroupoid.fixtures import FIXTURES, fixture
from pargroupoid.kpar import verify_iso


@dataclass
class SurveyConfig:
    fields: list = field(default_factory=lambda: ["Q", "Fp:2", "Fp:3", "Fp:5", "Fp:7"])
    fixtures: list = field(default_factory=lambda: list(FIXTURES))
    max_len: int | None = None


def run(cfg):
    rows = []
    for name in cfg.fixtures:
        G = fixture(name)
        for fname in cfg.fields:
            t0 = time.perf_counter()
            cert = verify_iso(G, parse_field(fname), max_len=cfg.max_len)
            rows.append({
                "fixture": name,
                "field": fname,
                "arrows": G.n_arrows,
                "br_count": cert.br_count,
                "nf_rank": cert.normal_form_rank,
                "max_len_used": cert.max_len_used,
                "passed": cert.passed,
                "seconds": round(time.perf_counter() - t0, 4),
            })
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fields", nargs="+", default=SurveyConfig().fields)
    ap.add_argument("--fixtures", nargs="+", default=SurveyConfig().fixtures)
    ap.add_argument("--max-len", type=int, default=None)
    ap.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    args = ap.parse_args()
    cfg = SurveyConfig(args.fields, args.fixtures, args.max_len)
    rows = run(cfg)
    if args.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=1))
        return
    print(f"{'fixture':16} {'field':6} {'|G|':>4} {'|BR|':>5} {'rank':>5} {'len':>4}  ok    secs")
    for r in rows:
        print(f"{r['fixture']:16} {r['field']:6} {r['arrows']:4} {r['br_count']:5} {r['nf_rank']:5} "
              f"{r['max_len_used']:4}  {str(r['passed']):5} {r['seconds']:.3f}")
    print(f"{sum(r['passed'] for r in rows)}/{len(rows)} certificates passed")


if __name__ == "__main__":
    main()
