#!/usr/bin/env python3
"""Run FM on every fundamental weight of small rank and tabulate the results.

Columns: type, node, monomial count, special, classical decomposition,
dimension of the restriction and the Weyl dimension of the fundamental weight.
"""
import time

from qaffine.cartan import build_root_system, decompose_character, weyl_dimension
from qaffine.fm import classify, fm_run
from qaffine.lweight import LMonomial, restrict


def main():
    print(f"{'type':<5}{'node':>5}{'terms':>7}{'special':>9}{'dim':>6}{'weyl':>6}  decomposition")
    start = time.time()
    for name in ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2", "F4"]:
        rs = build_root_system(name)
        for i in rs.nodes:
            res = fm_run(rs, LMonomial.Y(i, 0))
            ch = restrict(rs, res.character)
            omega = tuple(int(j == i) for j in rs.nodes)
            dec = " + ".join(f"V{mu}" if m == 1 else f"{m}V{mu}" for mu, m in decompose_character(rs, ch))
            print(f"{name:<5}{i:>5}{len(res.character):>7}{str(classify(res)['special']):>9}"
                  f"{ch.dimension():>6}{weyl_dimension(rs, omega):>6}  {dec}")
    print(f"total {time.time() - start:.1f}s")


if __name__ == "__main__":
    main()
