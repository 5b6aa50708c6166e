"""Size of the swap families (indices, A pairs, B words) for the fixture NPDAs.

    python3 scripts/swap_sweep.py --max-n 10 --j0 2 --k 4
"""
import argparse
import csv
import sys

from cflprg.npda_swap import FIXTURE_MACHINES, build_swap_family, verify_swapping


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--machines", nargs="+", default=sorted(FIXTURE_MACHINES))
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--j0", type=int, default=2)
    ap.add_argument("--k", type=int, default=4)
    args = ap.parse_args()

    w = csv.writer(sys.stdout)
    w.writerow(["machine", "n", "indices", "a_pairs", "b_words", "ok", "truncated"])
    for name in args.machines:
        m = FIXTURE_MACHINES[name]()
        for n in range(args.k, args.max_n + 1):
            fam = build_swap_family(m, n, args.j0, args.k)
            rep = verify_swapping(fam, m, n)
            w.writerow([name, n, len(fam.indices()), sum(map(len, fam.A.values())),
                        sum(map(len, fam.B.values())), rep.ok, fam.truncated])


if __name__ == "__main__":
    main()
