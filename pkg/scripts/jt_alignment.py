#!/usr/bin/env python3
"""Align type B tableau characters with FM characters of minimal affinizations.

For each shape the highest weight is read off the tableau character and the
two variants of the minimal affinization are tried.
"""
from qaffine.cartan import build_root_system
from qaffine.fm import fm_run
from qaffine.lweight import classical_weight, is_dominant
from qaffine.minaff import SkewShape, jt_character, minaff_weight, tau_align

SHAPES = {2: [(1,), (2,), (1, 1), (2, 1), (2, 2)], 3: [(1,), (2,), (1, 1), (1, 1, 1), (2, 1), (2, 2)]}


def main():
    for n, shapes in SHAPES.items():
        rs = build_root_system("B", n)
        for shape in shapes:
            jt = jt_character(n, SkewShape(shape))
            top = max((m for m in jt if is_dominant(m)), key=lambda m: (m.degree(), m.items))
            lam = classical_weight(rs, top)
            found = []
            for variant in (1, 2):
                fm = fm_run(rs, minaff_weight(rs, lam, variant)).character
                found.append(tau_align(fm, jt))
            print(f"B{n} shape {shape}: {len(jt)} terms, weight {lam}, shift v1={found[0]} v2={found[1]}")


if __name__ == "__main__":
    main()
