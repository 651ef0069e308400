"""Look for two-disparate-face maps with unequal disparate degrees.

    python3 scripts/run_conjecture.py --vmax 10
    python3 scripts/run_conjecture.py --pair 3,5 --vmax 24
"""

import argparse
import time

from nearplat.counting import Signature
from nearplat.planar_map import face_vector
from nearplat.search import check_conjecture_equal_degrees

PAIRS = [(3, 3), (3, 4), (3, 5), (4, 3), (5, 3)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--vmax", type=int, default=10)
    ap.add_argument("--pair", action="append", help="k,d2 (repeatable)")
    ap.add_argument("--budget-secs", type=float, default=300.0)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    pairs = [tuple(int(x) for x in p.split(",")) for p in args.pair] if args.pair else PAIRS

    for k, d2 in pairs:
        t0 = time.monotonic()
        cr = check_conjecture_equal_degrees(k, d2, args.vmax, budget_secs=args.budget_secs, threads=args.threads)
        dt = time.monotonic() - t0
        fams = ", ".join(f"{fid.value}({d})" for fid, d in sorted(cr.recovered.values(), key=str))
        print(f"({k},{d2}) v<={args.vmax}: {len(cr.report.witnesses())} witnesses in {dt:.1f}s, "
              f"complete={cr.report.complete}")
        print(f"    unequal: {len(cr.unequal)}   recovered: {fams or '-'}")
        for _, pm in cr.unequal + cr.unexplained:
            tag = "UNEQUAL" if any(pm is m for _, m in cr.unequal) else "not a known family"
            print(f"    {tag}: {Signature(k, face_vector(pm))} on {pm.vertex_count} vertices")


if __name__ == "__main__":
    main()
