"""Ratio of observed discrepancy to its bound for random T-sets, by (n, case, j, density).

    python3 scripts/discrepancy_sweep.py --trials 50 --densities 0.1 0.5 0.9
"""
import argparse
import csv
import sys

import numpy as np

from cflprg.discrepancy import CaseParams, case_bound_check, random_subset


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--densities", type=float, nargs="+", default=[0.1, 0.5, 0.9])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    w = csv.writer(sys.stdout)
    w.writerow(["n", "case", "j", "density", "worst_ratio", "mean_ratio", "violations"])
    for n in args.ns:
        for case, js in ((1, range(n, 2 * n + 1)), (2, range(2 * n + 1, 3 * n + 1))):
            for j in js:
                for dens in args.densities:
                    ratios, bad = [], 0
                    for _ in range(args.trials):
                        p = CaseParams(n, j, random_subset(4 * n - j, rng, dens), random_subset(j, rng, dens), case)
                        res = case_bound_check(p)
                        ratios.append(float(res.disc / p.bound))
                        bad += not res.ok
                    w.writerow([n, case, j, dens, f"{max(ratios):.4f}", f"{np.mean(ratios):.4f}", bad])


if __name__ == "__main__":
    main()
