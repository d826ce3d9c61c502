#!/usr/bin/env python
"""Average TTR of FARCH under primary-user traffic.

Two experiments, each written as a CSV in --out-dir:

* pu_traffic.csv: N in {11, 12}, X in {5, 10}, p = 0, 0.1, ..., 1
* channel_count.csv: N = 10, 15, ..., 50 with X = floor(0.8 N), p in {0.4, 0.8}

10 SU pairs per run, fresh FARCH pairs per run, 10000 runs per point by
default.  All points share the master seed, so curves are coupled in p and X.
"""

import argparse
import csv
import logging
import time
from pathlib import Path

from farch.simulate import SWEEP_COLUMNS, SweepConfig, sweep

log = logging.getLogger("average_ttr")


def write(rows, path):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)


def main() -> None:
    p = argparse.ArgumentParser(description="Average-TTR experiments for FARCH")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--traffic", choices=["per-slot", "static"], default="per-slot")
    p.add_argument("--out-dir", type=Path, default=Path("results"))
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    args.out_dir.mkdir(parents=True, exist_ok=True)

    common = dict(seed=args.seed, trials=args.trials, traffic_mode=args.traffic)
    experiments = {
        "pu_traffic.csv": SweepConfig(n=[11, 12], x=[5, 10], p=[i / 10 for i in range(11)], **common),
        "channel_count.csv": SweepConfig(n=list(range(10, 51, 5)), x_fraction=[0.8], p=[0.4, 0.8], **common),
    }
    for name, cfg in experiments.items():
        start = time.perf_counter()
        rows = sweep(cfg, progress=log.info)
        write(rows, args.out_dir / name)
        log.info("%s: %d rows in %.1fs", name, len(rows), time.perf_counter() - start)


if __name__ == "__main__":
    main()
