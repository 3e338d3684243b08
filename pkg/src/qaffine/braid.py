"""Braid group action on the l-weight lattice and its consequences."""
from __future__ import annotations

from functools import lru_cache

from .cartan import RootSystem, RootSystemError, is_reduced, reflect_root, word_length
from .lweight import (
    DEFAULT_ORBIT,
    LMonomial,
    _neighbour_offsets,
    root_factorization,
    simple_root_monomial,
)
from .sl2core import general_position, rescale


def _check(rs, i):
    if not isinstance(i, int) or not 1 <= i <= rs.rank:
        raise RootSystemError(f"node {i!r} out of range 1..{rs.rank}")


@lru_cache(maxsize=100000)
def _image_of_Y(rs, i, j, orbit, k):
    """T_i(Y_{j,(o,k)}) as a dict; linear in the exponent."""
    if j != i:
        return {(j, orbit, k): 1}
    out = {(i, orbit, k + 2 * rs.d(i)): -1}
    for m in rs.nodes:
        if m != i:
            for off in _neighbour_offsets(rs, i, rs.a(m, i)):
                out[(m, orbit, k + off)] = out.get((m, orbit, k + off), 0) + 1
    return out


def braid_apply(rs: RootSystem, i, m: LMonomial) -> LMonomial:
    _check(rs, i)
    acc = {}
    for (j, o, k), e in m.items:
        for key, f in _image_of_Y(rs, i, j, o, k).items():
            acc[key] = acc.get(key, 0) + e * f
    return LMonomial.from_dict({k: v for k, v in acc.items() if v})


def braid_apply_inverse(rs: RootSystem, i, m: LMonomial) -> LMonomial:
    """T_i^{-1}: undo the coordinate-i flip, then remove the neighbour copies."""
    _check(rs, i)
    part = m.part(i)
    # T_i sends Y_{i,k} to Y_{i,k+2d_i}^{-1} times neighbour factors, so the
    # preimage of the i-part is obtained by shifting down and inverting.
    pre = LMonomial({(i, o, k - 2 * rs.d(i)): -e for (_, o, k), e in part.items})
    rest = m.without(i)
    return pre * (rest / braid_apply(rs, i, pre).without(i))


def braid_word_apply(rs: RootSystem, word, m: LMonomial) -> LMonomial:
    """T_{i1} T_{i2} ... T_{ik} m, the rightmost generator acting first."""
    for i in reversed(list(word)):
        m = braid_apply(rs, i, m)
    return m


def braid_positivity(rs: RootSystem, word, i, shift=0, orbit=DEFAULT_ORBIT):
    """Whether T_w(alpha_{i,a}) lies in Q+, with its alpha-factorization.

    Returns (positive, factorization, classical_root_is_positive).
    """
    word = list(word)
    for j in word + [i]:
        _check(rs, j)
    if not is_reduced(rs, word):
        raise ValueError(f"word {word} is not reduced")
    image = braid_word_apply(rs, word, simple_root_monomial(rs, i, shift, orbit))
    fac = root_factorization(rs, image)
    positive = all(e > 0 for e in fac.values())
    root = tuple(int(j == i) for j in rs.nodes)
    for j in reversed(word):
        root = reflect_root(rs, j, root)
    return positive, dict(sorted(fac.items())), all(c >= 0 for c in root)


def tensor_hw_sufficient(rs: RootSystem, pi1: LMonomial, pi2: LMonomial, w0word=None):
    """Evaluate the sufficient conditions for V(pi1) x V(pi2) to be l-highest weight / irreducible.

    A False flag means the criterion is inconclusive.
    """
    word = list(rs.w0_word if w0word is None else w0word)
    if len(word) != len(rs.posroots) or word_length(rs, word) != len(word):
        raise ValueError("word is not a reduced expression of the longest element")
    hw = irr = True
    n = len(word)
    current = pi1
    # j runs N, N-1, ..., 1; the coordinate examined at step j is i_j of
    # T_{i_{j+1}} ... T_{i_N} pi1.
    for idx in range(n - 1, -1, -1):
        node = word[idx]
        a = current.part(node)
        b = pi2.part(node)
        if not _dominant(a):
            hw = irr = False
            break
        a1 = rescale(a, rs.d(node))
        b1 = rescale(b, rs.d(node))
        if hw and not general_position(a1, b1, "oneSided"):
            hw = False
        if irr and not general_position(a1, b1, "joint"):
            irr = False
        current = braid_apply(rs, node, current)
    return {"hw": hw, "irreducible": irr}


def _dominant(m):
    return all(e > 0 for _, e in m.items)
