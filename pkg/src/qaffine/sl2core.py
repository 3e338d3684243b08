"""sl2 l-weight combinatorics: q-strings, q-factorization and sl2 q-characters.

An sl2 dominant monomial is a product of Y_{1,(o,k)} with positive exponents;
its roots are the parameters (o,k) counted with multiplicity.  A q-string of
length m centred at (o,c) has roots c-m+1, c-m+3, ..., c+m-1.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb

from .lweight import DEFAULT_ORBIT, ONE, LMonomial, QPolynomial, qpoly_product


@dataclass(frozen=True, order=True)
class StringFactor:
    length: int
    orbit: str
    center: int

    @property
    def roots(self):
        m, c = self.length, self.center
        return [c + m - 2 * j + 1 for j in range(1, m + 1)]

    def monomial(self, node=1):
        return q_string(self.length, self.center, self.orbit, node)

    def __str__(self):
        return f"({self.length}, {self.center})" if self.orbit == DEFAULT_ORBIT else f"({self.length}, {self.center};{self.orbit})"


def q_string(m, shift=0, orbit=DEFAULT_ORBIT, node=1) -> LMonomial:
    if m < 0:
        raise ValueError("string length must be nonnegative")
    return LMonomial({(node, orbit, shift + m - 2 * j + 1): 1 for j in range(1, m + 1)})


def _roots(pi: LMonomial):
    nodes = pi.nodes()
    if len(nodes) > 1:
        raise ValueError("an sl2 l-weight lives on a single node")
    roots = Counter()
    for (_, o, k), e in pi.items:
        if e < 0:
            raise ValueError(f"{pi} is not dominant")
        roots[(o, k)] += e
    return roots


def factor_roots(roots: Counter, step=2):
    """q-factorization of a root multiset whose keys are (orbit, shift).

    The longest available arithmetic run of the given step is removed first
    (ties go to the smallest (orbit, centre)); the result is sorted by
    decreasing length and then (orbit, centre).
    """
    roots = Counter({k: v for k, v in roots.items() if v > 0})
    out = []
    while roots:
        best = None
        for (o, k) in roots:
            if (o, k - step) in roots:
                continue
            length = 1
            while (o, k + step * length) in roots:
                length += 1
            first = k
            cand = (-length, o, first)
            if best is None or cand < best:
                best = cand
        length, o, first = -best[0], best[1], best[2]
        for t in range(length):
            key = (o, first + step * t)
            roots[key] -= 1
            if not roots[key]:
                del roots[key]
        out.append((length, o, first))
    out.sort(key=lambda t: (-t[0], t[1], t[2] + step * (t[0] - 1) / 2))
    return out


def q_factorize(pi: LMonomial):
    """The q-factorization of a dominant sl2 monomial, longest strings first."""
    out = []
    for length, o, first in factor_roots(_roots(pi)):
        out.append(StringFactor(length, o, first + length - 1))
    return out


def spacing_ok(f1: StringFactor, f2: StringFactor):
    """The pairwise condition that makes a list of strings a q-factorization."""
    if f1.orbit != f2.orbit:
        return True
    big, small = (f1, f2) if f1.length >= f2.length else (f2, f1)
    diff = abs(big.center - small.center)
    forbidden = range(big.length - small.length + 2, big.length + small.length + 1, 2)
    return diff not in forbidden


def is_q_factorization(factors):
    return all(spacing_ok(a, b) for x, a in enumerate(factors) for b in factors[x + 1:])


def string_terms(m, center, orbit=DEFAULT_ORBIT):
    """For j = 0..m, the alpha shifts removed from the top of the m-string to reach its j-th term."""
    return [[center + m - 2 * t + 1 for t in range(1, j + 1)] for j in range(m + 1)]


def sl2_alpha(shift, orbit=DEFAULT_ORBIT, node=1):
    return LMonomial({(node, orbit, shift): 1, (node, orbit, shift + 2): 1})


def string_qchar(m, shift=0, orbit=DEFAULT_ORBIT) -> QPolynomial:
    if m < 0:
        raise ValueError("string length must be nonnegative")
    top = q_string(m, shift, orbit)
    out = QPolynomial()
    for alphas in string_terms(m, shift, orbit):
        mono = top
        for s in alphas:
            mono = mono / sl2_alpha(s, orbit)
        out.add(mono, 1)
    return out


def sl2_simple_qchar(pi: LMonomial) -> QPolynomial:
    return qpoly_product(string_qchar(f.length, f.center, f.orbit) for f in q_factorize(pi))


def sl2_weyl_qchar(pi: LMonomial) -> QPolynomial:
    """Sum over divisors pi' of d_pi(pi') pi'(u) pi'(q^2 u) / pi(q^2 u)."""
    roots = sorted(_roots(pi).items())
    out = QPolynomial({ONE: 1})
    for (o, k), r in roots:
        part = QPolynomial()
        for s in range(r + 1):
            mono = LMonomial({(1, o, k): s, (1, o, k + 2): s - r})
            part.add(mono, comb(r, s))
        out = out * part
    return out


def weyl_product_form(pi: LMonomial) -> QPolynomial:
    """The product of 1-string characters over all roots of pi."""
    out = QPolynomial({ONE: 1})
    for (o, k), r in _roots(pi).items():
        for _ in range(r):
            out = out * string_qchar(1, k, o)
    return out


def rescale(m: LMonomial, d=1, node=1) -> LMonomial:
    """View one coordinate of an ambient monomial on the q_i = q^d lattice.

    Shifts k become (k - r)/d with r = k mod d folded into the orbit label, so
    that a q_i-string turns into an ordinary sl2 string.
    """
    if d == 1:
        return LMonomial({(node, o, k): e for (_, o, k), e in m.items})
    out = {}
    for (_, o, k), e in m.items:
        r = k % d
        out[(node, f"{o}~{r}", (k - r) // d)] = e
    return LMonomial(out)


def unscale_key(orbit, shift, d=1):
    """Inverse of rescale on a single (orbit, shift) pair."""
    if d == 1:
        return orbit, shift
    o, r = orbit.rsplit("~", 1)
    return o, shift * d + int(r)


def general_position(pi1: LMonomial, pi2: LMonomial, mode="joint"):
    """joint: the q-factorization of pi1*pi2 is the union of the separate ones.

    oneSided: pi1 is in general position with respect to pi2, i.e. for every
    pair of q-factors (m, a) of pi1 and (r, b) of pi2, a != b q^{-(m+r-2p)}
    for 0 <= p < min(m, r).
    """
    f1, f2 = q_factorize(pi1), q_factorize(pi2)
    if mode == "joint":
        return sorted(q_factorize(pi1 * pi2)) == sorted(f1 + f2)
    if mode in ("oneSided", "one_sided", "onesided"):
        for a in f1:
            for b in f2:
                if a.orbit != b.orbit:
                    continue
                for p in range(min(a.length, b.length)):
                    if a.center == b.center - (a.length + b.length - 2 * p):
                        return False
        return True
    raise ValueError(f"unknown general-position mode {mode!r}")


def sl2_class_partition(pi: LMonomial):
    return sorted((f.length for f in q_factorize(pi)), reverse=True)


def minuscule_by_spacing(factors):
    """Minuscule test on a q-factorization: a_k avoids a_j q^{m_j-m_k-2}, ..., a_j q^{-m_j-m_k+2}."""
    for x, fk in enumerate(factors):
        for y, fj in enumerate(factors):
            if x == y or fk.orbit != fj.orbit:
                continue
            lo, hi = -fj.length - fk.length + 2, fj.length - fk.length - 2
            d = fk.center - fj.center
            if lo <= d <= hi and (d - lo) % 2 == 0:
                return False
    return True


def quasi_minuscule_by_spacing(factors):
    if not minuscule_by_spacing(factors):
        return False
    for x, fk in enumerate(factors):
        for y, fj in enumerate(factors):
            if x != y and fk.orbit == fj.orbit and fk.center == fj.center + fj.length - fk.length:
                return False
    return True
