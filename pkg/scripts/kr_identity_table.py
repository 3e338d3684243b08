#!/usr/bin/env python3
"""Compare KR characters with the fermionic sum for single-entry and small nu."""
from qaffine.cartan import build_root_system
from qaffine.krsys import format_nu, kr_identity_verify

CASES = [("A1", {(1, k): 1}) for k in range(1, 5)] + [("A1", {(1, 1): 2}), ("A1", {(1, 1): 1, (1, 2): 1})]
CASES += [(t, {(i, k): 1}) for t in ("A2", "B2", "C2") for i in (1, 2) for k in (1, 2)]
CASES += [("A3", {(i, 1): 1}) for i in (1, 2, 3)] + [("G2", {(1, 1): 1}), ("A2", {(1, 1): 1, (2, 1): 1})]


def main():
    for name, nu in CASES:
        ok, lhs, _ = kr_identity_verify(build_root_system(name), nu)
        print(f"{name} nu={format_nu(nu)}: {'EQUAL' if ok else 'NOT EQUAL'} ({len(lhs)} weights)")


if __name__ == "__main__":
    main()
