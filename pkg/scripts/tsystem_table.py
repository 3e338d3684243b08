#!/usr/bin/env python3
"""Check the T-system and its classical shadow for small KR modules."""
import argparse
import time

from qaffine.cartan import build_root_system
from qaffine.krsys import q_system_verify, t_system_verify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--types", default="A1,A2,A3,B2,C2,G2")
    ap.add_argument("--kmax", type=int, default=3)
    args = ap.parse_args()
    for name in args.types.split(","):
        rs = build_root_system(name)
        for i in rs.nodes:
            for k in range(1, args.kmax + 1):
                t0 = time.time()
                ok, lhs, _ = t_system_verify(rs, i, k)
                qok = q_system_verify(rs, i, k)[0]
                print(f"{name} node {i} k={k}: T {'EQUAL' if ok else 'NOT EQUAL'}, "
                      f"Q {'EQUAL' if qok else 'NOT EQUAL'}, {len(lhs)} terms, {time.time() - t0:.2f}s")


if __name__ == "__main__":
    main()
