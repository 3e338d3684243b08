"""Finite root systems, Weyl group actions and classical characters.

Nodes are numbered 1..n following Bourbaki.  Weights are integer tuples of
coordinates along the fundamental weights; roots in ``posroots`` are tuples
of coordinates along the simple roots.  The Cartan entries follow
``a[i][j] = 2(alpha_i, alpha_j) / (alpha_i, alpha_i)`` so that
``s_i(alpha_j) = alpha_j - a[i][j] alpha_i`` and ``d_i a_ij`` is symmetric.
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

Weight = tuple  # tuple[int, ...] over fundamental weights

DUAL_COXETER = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n - 1,
    "C": lambda n: n + 1,
    "D": lambda n: 2 * n - 2,
    "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
    "F": lambda n: 9,
    "G": lambda n: 4,
}


class RootSystemError(ValueError):
    pass


def _diagram(series, n):
    """Return (edges, d) with 1-based edges and minimal symmetrizers."""
    chain = [(i, i + 1) for i in range(1, n)]
    if series == "A":
        return chain, [1] * n
    if series == "B":
        return chain, [2] * (n - 1) + [1]
    if series == "C":
        return chain, [1] * (n - 1) + [2]
    if series == "D":
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
        return edges, [1] * n
    if series == "E":
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
        return edges, [1] * n
    if series == "F":
        return chain, [2, 2, 1, 1]
    if series == "G":
        return chain, [1, 3]
    raise RootSystemError(f"unknown series {series!r}")


VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class RootSystem:
    series: str
    rank: int
    cartan: tuple
    sym: tuple
    posroots: tuple = field(repr=False)
    theta: tuple = field(repr=False)
    dualcox: int = field(repr=False)

    @property
    def nodes(self):
        return range(1, self.rank + 1)

    @property
    def name(self):
        return f"{self.series}{self.rank}"

    def a(self, i, j):
        """Cartan entry a_{ij} with 1-based indices."""
        return self.cartan[i - 1][j - 1]

    def d(self, i):
        return self.sym[i - 1]

    @property
    def maxd(self):
        return max(self.sym)

    def neighbours(self, i):
        return [j for j in self.nodes if j != i and self.a(i, j) != 0]

    def simple_root(self, i) -> Weight:
        """alpha_i in fundamental-weight coordinates (column i of the Cartan matrix)."""
        return tuple(self.a(j, i) for j in self.nodes)

    def root_to_weight(self, root) -> Weight:
        out = [0] * self.rank
        for i, c in enumerate(root, start=1):
            if c:
                for j in self.nodes:
                    out[j - 1] += c * self.a(j, i)
        return tuple(out)

    @cached_property
    def _inverse_cartan(self):
        n = self.rank
        m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self.cartan)]
        for col in range(n):
            piv = next(r for r in range(col, n) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            p = m[col][col]
            m[col] = [x / p for x in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        return tuple(tuple(row[n:]) for row in m)

    @cached_property
    def _height_vector(self):
        inv = self._inverse_cartan
        return tuple(sum(inv[i][j] for i in range(self.rank)) for j in range(self.rank))

    def weight_to_root(self, w) -> tuple:
        """Coordinates of w along the simple roots (Fractions)."""
        inv = self._inverse_cartan
        return tuple(sum(inv[i][j] * w[j] for j in range(self.rank)) for i in range(self.rank))

    def root_height(self, w) -> Fraction:
        return sum((h * x for h, x in zip(self._height_vector, w)), Fraction(0))

    def inner(self, lam, mu) -> Fraction:
        """Invariant form with (alpha_i, alpha_i) = 2 d_i."""
        c = self.weight_to_root(mu)
        return sum(
            (c[k - 1] * self.d(k) * lam[k - 1] for k in self.nodes), Fraction(0)
        )

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def posroot_weights(self):
        return tuple(self.root_to_weight(r) for r in self.posroots)

    def coroot_pairing(self, lam, root) -> Fraction:
        """<lam, beta^vee> for a positive root given in root coordinates."""
        w = self.root_to_weight(root)
        return 2 * self.inner(lam, w) / self.inner(w, w)

    @cached_property
    def w0_word(self):
        """A reduced word for the longest element (product order)."""
        v = list(self.rho)
        seq = []
        while True:
            i = next((k for k in self.nodes if v[k - 1] > 0), None)
            if i is None:
                break
            seq.append(i)
            v = list(reflect(self, i, tuple(v)))
        return tuple(reversed(seq))

    @cached_property
    def diagram_involution(self):
        """The permutation i -> -w0(i) of the nodes."""
        out = {}
        for i in self.nodes:
            om = tuple(1 if k == i else 0 for k in self.nodes)
            img = weyl_action(self, self.w0_word, om)
            j = next(k for k in self.nodes if img[k - 1] == -1)
            out[i] = j
        return out

    def is_dominant(self, w):
        return all(c >= 0 for c in w)


def parse_type(descriptor):
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", descriptor)
    if not m:
        raise RootSystemError(f"bad type descriptor {descriptor!r}")
    return m.group(1).upper(), int(m.group(2))


@lru_cache(maxsize=None)
def build_root_system(series, rank=None) -> RootSystem:
    if rank is None:
        series, rank = parse_type(series)
    series = str(series).upper()
    if series not in VALID_RANKS or not isinstance(rank, int) or not VALID_RANKS[series](rank):
        raise RootSystemError(f"invalid finite type ({series}, {rank})")
    edges, d = _diagram(series, rank)
    cartan = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        cartan[i][i] = 2
    for i, j in edges:
        form = -max(d[i - 1], d[j - 1])
        cartan[i - 1][j - 1] = form // d[i - 1]
        cartan[j - 1][i - 1] = form // d[j - 1]
    cartan = tuple(tuple(r) for r in cartan)
    posroots = _positive_roots(cartan, rank)
    theta = max(posroots, key=sum)
    return RootSystem(
        series=series,
        rank=rank,
        cartan=cartan,
        sym=tuple(d),
        posroots=posroots,
        theta=theta,
        dualcox=DUAL_COXETER[series](rank),
    )


def _positive_roots(cartan, n):
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                pairing = sum(beta[j] * cartan[i][j] for j in range(n))
                if pairing == 0:
                    continue
                img = list(beta)
                img[i] -= pairing
                img = tuple(img)
                if all(c >= 0 for c in img) and img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return tuple(sorted(seen, key=lambda r: (sum(r), r)))


def _check_node(rs, i):
    if not isinstance(i, int) or not 1 <= i <= rs.rank:
        raise RootSystemError(f"node {i!r} out of range 1..{rs.rank}")


def reflect(rs, i, w) -> Weight:
    """s_i(w) = w - w(i) alpha_i."""
    _check_node(rs, i)
    c = w[i - 1]
    if c == 0:
        return tuple(w)
    return tuple(w[j - 1] - c * rs.a(j, i) for j in rs.nodes)


def weyl_action(rs, word, w) -> Weight:
    """Apply the product s_{i1} s_{i2} ... s_{ik} to w (rightmost letter acts first)."""
    w = tuple(w)
    for i in reversed(list(word)):
        w = reflect(rs, i, w)
    return w


def reflect_root(rs, i, root):
    pairing = sum(root[j - 1] * rs.a(i, j) for j in rs.nodes)
    out = list(root)
    out[i - 1] -= pairing
    return tuple(out)


def word_length(rs, word):
    """Coxeter length of the element s_{i1}...s_{ik}."""
    count = 0
    for beta in rs.posroots:
        img = beta
        for i in reversed(list(word)):
            img = reflect_root(rs, i, img)
        if all(c <= 0 for c in img):
            count += 1
    return count


def is_reduced(rs, word):
    return word_length(rs, word) == len(word)


def dominant_representative(rs, w) -> Weight:
    w = tuple(w)
    while True:
        i = next((k for k in rs.nodes if w[k - 1] < 0), None)
        if i is None:
            return w
        w = reflect(rs, i, w)


def weyl_orbit(rs, w):
    w = tuple(w)
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for v in frontier:
            for i in rs.nodes:
                u = reflect(rs, i, v)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# classical characters


class ClassicalCharacter(dict):
    """Finite integer combination of formal exponentials e(mu)."""

    def __init__(self, data=None):
        super().__init__()
        if data:
            for k, v in dict(data).items():
                if v:
                    self[tuple(k)] = self.get(tuple(k), 0) + v
            for k in [k for k, v in self.items() if v == 0]:
                del self[k]

    def add(self, mu, c):
        mu = tuple(mu)
        v = self.get(mu, 0) + c
        if v:
            self[mu] = v
        elif mu in self:
            del self[mu]

    def __add__(self, other):
        out = ClassicalCharacter(self)
        for k, v in other.items():
            out.add(k, v)
        return out

    def __sub__(self, other):
        out = ClassicalCharacter(self)
        for k, v in other.items():
            out.add(k, -v)
        return out

    def __mul__(self, other):
        if isinstance(other, int):
            return ClassicalCharacter({k: v * other for k, v in self.items()})
        out = defaultdict(int)
        for k1, v1 in self.items():
            for k2, v2 in other.items():
                out[tuple(a + b for a, b in zip(k1, k2))] += v1 * v2
        return ClassicalCharacter(out)

    __rmul__ = __mul__

    def dimension(self):
        return sum(self.values())

    def shift(self, mu):
        return ClassicalCharacter({tuple(a + b for a, b in zip(k, mu)): v for k, v in self.items()})

    @classmethod
    def exp(cls, mu, coeff=1):
        return cls({tuple(mu): coeff})

    def __repr__(self):
        items = sorted(self.items(), key=lambda kv: tuple(-x for x in kv[0]))
        return "ClassicalCharacter(" + ", ".join(f"e{k}:{v}" for k, v in items) + ")"


def weyl_dimension(rs, lam):
    """Weyl dimension formula, evaluated exactly."""
    lr = tuple(a + 1 for a in lam)
    num = Fraction(1)
    for beta in rs.posroots:
        num *= rs.coroot_pairing(lr, beta) / rs.coroot_pairing(rs.rho, beta)
    assert num.denominator == 1
    return int(num)


@lru_cache(maxsize=None)
def _dominant_multiplicities(rs, lam):
    """Freudenthal recursion over the dominant weights below lam."""
    lam = tuple(lam)
    lr = tuple(a + 1 for a in lam)
    norm_top = rs.inner(lr, lr)
    # dominant weights mu <= lam, ordered by depth
    doms = {lam: 0}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for beta in rs.posroot_weights:
                nu = tuple(a - b for a, b in zip(mu, beta))
                rep = dominant_representative(rs, nu)
                gap = rs.weight_to_root(tuple(a - b for a, b in zip(lam, rep)))
                if any(g < 0 or g.denominator != 1 for g in gap):
                    continue
                if rep not in doms:
                    depth = rs.root_height(lam) - rs.root_height(rep)
                    doms[rep] = depth
                    nxt.append(rep)
        frontier = nxt
    mult = {}
    for mu in sorted(doms, key=lambda m: doms[m]):
        if mu == lam:
            mult[mu] = 1
            continue
        mr = tuple(a + 1 for a in mu)
        denom = norm_top - rs.inner(mr, mr)
        total = Fraction(0)
        for beta in rs.posroot_weights:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, beta))
                m = mult.get(dominant_representative(rs, nu), 0)
                if m == 0 and rs.root_height(nu) > rs.root_height(lam):
                    break
                if m:
                    total += m * rs.inner(nu, beta)
                k += 1
        val = 2 * total / denom
        assert val.denominator == 1, (lam, mu, val)
        if val:
            mult[mu] = int(val)
    return {k: v for k, v in mult.items() if v}


def weyl_character(rs, lam) -> ClassicalCharacter:
    lam = tuple(lam)
    if len(lam) != rs.rank or not rs.is_dominant(lam):
        raise ValueError(f"weight {lam} is not dominant for {rs.name}")
    out = ClassicalCharacter()
    for mu, m in _dominant_multiplicities(rs, lam).items():
        for nu in weyl_orbit(rs, mu):
            out[nu] = m
    return out


def decompose_character(rs, c: ClassicalCharacter):
    """Split a Weyl-invariant character into irreducibles.

    Repeatedly subtracts the irreducible character at a maximal dominant
    weight (maximal for the root-lattice order, ties broken by the
    lexicographically largest coordinates).
    """
    rest = ClassicalCharacter(c)
    out = []
    while rest:
        doms = [mu for mu in rest if rs.is_dominant(mu)]
        if not doms:
            raise ValueError("not a genuine character: no dominant weight left")
        top = max(doms, key=lambda mu: (rs.root_height(mu), mu))
        m = rest[top]
        if m < 0:
            raise ValueError(f"not a genuine character: coefficient {m} at {top}")
        rest = rest - weyl_character(rs, top) * m
        out.append((top, m))
        if any(v < 0 for v in rest.values()):
            raise ValueError("not a genuine character: negative coefficient after subtraction")
    return out
