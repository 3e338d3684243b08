"""Minimal affinizations and type B Jacobi-Trudi tableaux."""
from __future__ import annotations

from dataclasses import dataclass

from .cartan import RootSystem, decompose_character
from .fm import NotCertified, classify, fm_run
from .lweight import DEFAULT_ORBIT, ONE, LMonomial, QPolynomial, restrict


class OutOfScope(ValueError):
    pass


def _check_support(rs: RootSystem, lam):
    """Reject D/E weights whose support meets all three legs and the trivalent node."""
    if rs.series not in "DE":
        return
    supp = {i for i in rs.nodes if lam[i - 1] > 0}
    centre = next(i for i in rs.nodes if len(rs.neighbours(i)) == 3)
    legs = []
    for start in rs.neighbours(centre):
        leg, frontier = {start}, [start]
        while frontier:
            v = frontier.pop()
            for w in rs.neighbours(v):
                if w != centre and w not in leg:
                    leg.add(w)
                    frontier.append(w)
        legs.append(leg)
    touched = sum(1 for leg in legs if leg & supp)
    if touched == 3:
        raise OutOfScope("weights whose support meets all three legs are not handled")


def minaff_exponents(rs: RootSystem, lam, variant=1):
    """Centre shifts of the strings in each supported coordinate.

    The sum defining c_i runs over i_min <= j < i; the summand for variant 1
    is d_j l(j) + d_{j+1} l(j+1) + d_{j+1} - a_{j+1,j} - 1 and for variant 2
    it is d_j l(j) + d_{j+1} l(j+1) + d_j - a_{j,j+1} - 1.  Variant 1 centres
    sit at negative shifts, variant 2 at positive ones.
    """
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    lam = tuple(lam)
    if len(lam) != rs.rank or any(c < 0 for c in lam):
        raise ValueError(f"{lam} is not a dominant weight of {rs.name}")
    supp = [i for i in rs.nodes if lam[i - 1] > 0]
    if not supp:
        return {}
    imin = supp[0]
    centres = {}
    for i in supp:
        total = 0
        path = _path(rs, imin, i)
        # consecutive pairs (j, j') along the diagram path play the role of (j, j+1)
        for j, nxt in zip(path, path[1:]):
            base = rs.d(j) * lam[j - 1] + rs.d(nxt) * lam[nxt - 1]
            if variant == 1:
                total += base + rs.d(nxt) - rs.a(nxt, j) - 1
            else:
                total += base + rs.d(j) - rs.a(j, nxt) - 1
        centres[i] = -total if variant == 1 else total
    return centres


def _path(rs, start, end):
    """The unique path between two nodes of the Dynkin tree."""
    prev = {start: None}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for w in rs.neighbours(v):
            if w not in prev:
                prev[w] = v
                frontier.append(w)
    out = [end]
    while out[-1] != start:
        out.append(prev[out[-1]])
    return out[::-1]


def minaff_weight(rs: RootSystem, lam, variant=1, shift=0, orbit=DEFAULT_ORBIT) -> LMonomial:
    """Highest l-weight of the minimal affinization: q_i-strings of length l(i)."""
    _check_support(rs, lam)
    out = {}
    for i, c in minaff_exponents(rs, lam, variant).items():
        m, d = lam[i - 1], rs.d(i)
        for t in range(1, m + 1):
            key = (i, orbit, shift + c + d * (m - 2 * t + 1))
            out[key] = out.get(key, 0) + 1
    return LMonomial(out)


def _elim_guaranteed(rs, lam, variant):
    if rs.series in "ABG":
        return True
    if rs.series == "C" and lam[-1] == 0 and variant == 1:
        return True
    if rs.series == "F" and lam[3] == 0 and variant == 1:
        return True
    if rs.series == "D" and lam[-1] == lam[-2] and variant == 1:
        return True
    return False


def minaff_qchar(rs: RootSystem, lam, variant=1, max_monomials=None, max_height=None):
    """FM run on the minimal affinization; returns (character, certified, result)."""
    pi = minaff_weight(rs, lam, variant)
    res = fm_run(rs, pi, max_monomials, max_height)
    if not res.completed:
        return res.character, False, res
    cert = classify(res)["special"]
    if not cert and _elim_guaranteed(rs, lam, variant):
        raise NotCertified(f"minimal affinization of {lam} should be minuscule but FM found "
                           f"{len(res.dominants)} dominant monomials")
    return res.character, cert, res


def minaff_branch(rs: RootSystem, lam, variant=1, max_monomials=None, max_height=None):
    char, cert, res = minaff_qchar(rs, lam, variant, max_monomials, max_height)
    if not res.completed:
        raise RuntimeError("FM run exceeded its budget")
    if not cert:
        raise NotCertified("the FM output is not certified, so its restriction is not reported")
    return decompose_character(rs, restrict(rs, char))


# ---------------------------------------------------------------------------
# tableaux


def b_alphabet(n):
    """Symbols of B in increasing order: 1..n, 0, -n..-1 (negative = barred)."""
    return list(range(1, n + 1)) + [0] + list(range(-n, 0))


def _rank(n, s):
    return b_alphabet(n).index(s)


def parse_symbol(text):
    text = str(text).strip()
    if text.startswith(("~", "-")) or text.endswith("bar"):
        core = text.strip("~-").replace("bar", "")
        return -int(core)
    return int(text)


def symbol_str(s):
    return f"{-s}bar" if s < 0 else str(s)


def jt_box(n, symbol, shift=0, orbit=DEFAULT_ORBIT) -> LMonomial:
    if symbol not in b_alphabet(n):
        raise ValueError(f"{symbol!r} is not a symbol for B{n}")
    d = {}

    def put(i, k, e):
        if 1 <= i <= n:
            key = (i, orbit, shift + k)
            d[key] = d.get(key, 0) + e

    if symbol == 0:
        put(n, 2 * n + 1, -1)
        put(n, 2 * n - 3, 1)
    elif symbol == n:
        put(n - 1, 2 * n, -1)
        put(n, 2 * n - 1, 1)
        put(n, 2 * n - 3, 1)
    elif symbol == -n:
        put(n - 1, 2 * n - 2, 1)
        put(n, 2 * n + 1, -1)
        put(n, 2 * n - 1, -1)
    elif symbol > 0:
        i = symbol
        put(i - 1, 2 * i, -1)
        put(i, 2 * (i - 1), 1)
    else:
        i = -symbol
        put(i - 1, 4 * n - 2 * i - 2, 1)
        put(i, 4 * n - 2 * i, -1)
    return LMonomial(d)


@dataclass(frozen=True)
class SkewShape:
    lam: tuple
    mu: tuple = ()

    def __post_init__(self):
        lam = tuple(x for x in self.lam if x > 0)
        mu = tuple(x for x in self.mu if x > 0)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        if any(a < b for a, b in zip(lam, lam[1:])) or any(a < b for a, b in zip(mu, mu[1:])):
            raise ValueError("partitions must be weakly decreasing")
        if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
            raise ValueError("mu must be contained in lambda")

    def mu_at(self, i):
        return self.mu[i - 1] if i <= len(self.mu) else 0

    @property
    def cells(self):
        return [(i, j) for i in range(1, len(self.lam) + 1) for j in range(self.mu_at(i) + 1, self.lam[i - 1] + 1)]

    def longest_column(self):
        cols = {}
        for i, j in self.cells:
            cols[j] = cols.get(j, 0) + 1
        return max(cols.values(), default=0)

    def connected(self):
        for i in range(1, len(self.lam)):
            if self.lam[i] != 0 and not self.mu_at(i) + 1 <= self.lam[i]:
                return False
        return True


def jt_tableaux(n, shape: SkewShape):
    """All fillings satisfying the row and column conditions, cell by cell."""
    cells = shape.cells
    alphabet = b_alphabet(n)
    pos = {c: x for x, c in enumerate(cells)}
    filling = {}
    out = []

    def ok(cell, s):
        i, j = cell
        left = filling.get((i, j - 1))
        if left is not None:
            if _rank(n, left) > _rank(n, s) or (left == 0 and s == 0):
                return False
        up = filling.get((i - 1, j))
        if up is not None:
            if not (_rank(n, up) < _rank(n, s) or (up == 0 and s == 0)):
                return False
        return True

    def rec(x):
        if x == len(cells):
            out.append(dict(filling))
            return
        cell = cells[x]
        for s in alphabet:
            if ok(cell, s):
                filling[cell] = s
                rec(x + 1)
                del filling[cell]

    rec(0)
    return out


def jt_character(n, shape: SkewShape, shift=0, orbit=DEFAULT_ORBIT) -> QPolynomial:
    if shape.longest_column() > n:
        raise ValueError(f"a column longer than {n} does not fit B{n}")
    if not shape.connected():
        raise ValueError("the skew shape must be connected")
    out = QPolynomial()
    for t in jt_tableaux(n, shape):
        m = ONE
        for (i, j), s in t.items():
            m = m * jt_box(n, s, shift + 4 * (j - i), orbit)
        out.add(m, 1)
    return out


def tau_align(p1: QPolynomial, p2: QPolynomial):
    """The shift s with tau_s(p2) == p1, found from the dominant highest terms, or None."""
    from .lweight import is_dominant, twist_tau

    def top(p):
        doms = [m for m in p if is_dominant(m)]
        return max(doms, key=lambda m: (m.degree(), m.items)) if doms else None

    a, b = top(p1), top(p2)
    if a is None or b is None or len(a.items) != len(b.items):
        return None
    s = a.items[0][0][2] - b.items[0][0][2]
    return s if twist_tau(p2, s) == p1 else None
