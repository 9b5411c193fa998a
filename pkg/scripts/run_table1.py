"""Odd-index existence table for halves of E8, the tight 7-design and the
Leech minimal vectors.  Writes a JSON report next to the printed table.

    python3 scripts/run_table1.py --out table1.json
"""

import argparse
import json
import time
from dataclasses import dataclass

from halfdesign.cli import table1_rows
from halfdesign.designs import DEFAULT_KMAX, DEFAULT_SEED
from halfdesign.io import jsonable


@dataclass
class Config:
    kmax: int = DEFAULT_KMAX
    seed: int = DEFAULT_SEED
    threads: int = 1
    out: str = "table1.json"


def main():
    ap = argparse.ArgumentParser()
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    t0 = time.perf_counter()
    rows = table1_rows(cfg.kmax, cfg.seed, cfg.threads, log=print)
    for r in rows:
        cells = {k: ",".join(map(str, r[k])) or "-" for k in ("existence", "nonexistence", "infeasible")}
        print(f"{r['design']:<8} exist {cells['existence']:<6} none {cells['nonexistence']:<6} infeasible {cells['infeasible']}")
    with open(cfg.out, "w") as fh:
        json.dump(jsonable({"config": vars(cfg), "rows": rows, "seconds": time.perf_counter() - t0}), fh, indent=2)


if __name__ == "__main__":
    main()
