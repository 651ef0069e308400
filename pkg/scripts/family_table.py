"""Print each family's face vector, vertex count and disparate-face sharing for a range of d."""

import argparse

from nearplat.counting import Signature
from nearplat.families import FAMILY_SPECS, SHARED_PER_UNIT, generate_family
from nearplat.planar_map import face_vector


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dmax", type=int, default=6)
    args = ap.parse_args()
    for fid, spec in FAMILY_SPECS.items():
        sv, se = SHARED_PER_UNIT[fid]
        print(f"{fid.value}  (k={spec.k}, d2={spec.d2}, d_min={spec.d_min}, "
              f"shared per unit: {sv} vertices, {se} edges)")
        for d in range(spec.d_min, args.dmax + 1):
            pm = generate_family(fid, d)
            sig = Signature(spec.k, face_vector(pm))
            print(f"    d={d:<3} v={pm.vertex_count:<4} e={pm.edge_count:<4} {sig}")


if __name__ == "__main__":
    main()
