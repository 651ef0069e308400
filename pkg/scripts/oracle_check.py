"""Compare the face-tracing search with the brute-force oracle, vertex count by vertex count.

    python3 scripts/oracle_check.py --k 3 --vmax 8
"""

import argparse
import time
from fractions import Fraction

from nearplat.planar_map import automorphism_count
from nearplat.search import SearchTask, brute_force_oracle, enumerate_maps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--vmax", type=int, default=8)
    args = ap.parse_args()
    k = args.k
    print(f"{'v':>3} {'search':>7} {'oracle':>7} {'rooted':>8} {'t search':>9} {'t oracle':>9}")
    for v in range(k + 1, args.vmax + 1):
        if (k * v) % 2:
            continue
        t0 = time.monotonic()
        rep = enumerate_maps(SearchTask(k, None, v_min=v, v_max=v))
        t1 = time.monotonic()
        oracle = brute_force_oracle(k, v)
        t2 = time.monotonic()
        e = k * v // 2
        rooted = sum(c.rooted_maps for c in rep.cells)
        orbit = sum(Fraction(4 * e, automorphism_count(pm)) for _, pm in rep.witnesses())
        same = sorted(rep.codes()) == oracle and rooted == orbit
        print(f"{v:>3} {len(rep.codes()):>7} {len(oracle):>7} {rooted:>8} {t1 - t0:>9.2f} {t2 - t1:>9.2f}"
              f"  {'ok' if same else 'MISMATCH'}")


if __name__ == "__main__":
    main()
