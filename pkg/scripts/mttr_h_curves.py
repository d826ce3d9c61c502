#!/usr/bin/env python
"""Worst-case TTR under h blocked channels for FARCH pairs (the N=11/12 curves).

Every clock offset is enumerated, so the output is exact.  One row per
(N, seed, h); the lower bound column is (h+1)N for h < N-1 and N^2 at h = N-1.

    python scripts/mttr_h_curves.py --n 11 12 --seeds 0 1 2 --out mttr_h.csv
"""

import argparse
import csv
import sys

from farch import farch_pair, metrics_report, random_permutation
from farch.metrics import mttr_h_curve_rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, nargs="+", default=[11, 12])
    p.add_argument("--seeds", type=int, nargs="+", default=[0])
    p.add_argument("--out", default=None)
    args = p.parse_args()

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.DictWriter(fh, fieldnames=["n", "seed", "permutation", "h", "mttr_h", "lower_bound"])
    writer.writeheader()
    for n in args.n:
        for seed in args.seeds:
            w = random_permutation(n, seed)
            report = metrics_report(farch_pair(w))
            for row in mttr_h_curve_rows(report):
                writer.writerow({"n": n, "seed": seed, "permutation": " ".join(map(str, w)), **row})
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
