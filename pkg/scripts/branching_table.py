#!/usr/bin/env python3
"""Classical decompositions of minimal affinizations of m times a fundamental weight."""
import argparse

from qaffine.cartan import build_root_system
from qaffine.fm import NotCertified
from qaffine.minaff import minaff_branch


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--types", default="B2,B3,C2,C3,G2,A3")
    ap.add_argument("--mmax", type=int, default=3)
    args = ap.parse_args()
    for name in args.types.split(","):
        rs = build_root_system(name)
        for i in rs.nodes:
            for m in range(1, args.mmax + 1):
                lam = tuple(m if j == i else 0 for j in rs.nodes)
                try:
                    dec = minaff_branch(rs, lam)
                except NotCertified:
                    print(f"{name} {lam}: not certified")
                    continue
                print(f"{name} {lam}: " + " + ".join(f"V{mu}" if c == 1 else f"{c}V{mu}" for mu, c in dec))


if __name__ == "__main__":
    main()
