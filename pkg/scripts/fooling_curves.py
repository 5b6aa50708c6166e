"""Exact fooling statistic ell(n) and IP gap for a panel of adversaries.

    python3 scripts/fooling_curves.py --max-n 15 --out fooling.csv
"""
import argparse
import csv
import sys

from cflprg import adversaries as adv
from cflprg.checks import standard_adversaries
from cflprg.prg_eval import equivalence_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=15)
    ap.add_argument("--seed", type=int, default=2024, help="seed of the random-DFA panel")
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    ns = [n for n in range(3, args.max_n + 1, 4)]
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(out)
    w.writerow(["adversary", "n", "ell", "gap", "bound", "identity_ok", "bound_ok"])
    for lang in standard_adversaries(args.seed):
        for n in ns:
            rep = equivalence_report(lang, n, strict=False)
            w.writerow([lang.name, n, rep.ell, rep.gap, rep.bound, rep.identity_ok, rep.bound_ok])
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
