"""The Frenkel-Mukhin algorithm and q-characters of Weyl modules."""
from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb

from .cartan import RootSystem
from .lweight import (
    ONE,
    LMonomial,
    QPolynomial,
    format_monomial,
    is_dominant,
    simple_root_monomial,
    twist_tau,
)
from .sl2core import q_factorize, rescale, string_terms, unscale_key

DEFAULT_MAX_MONOMIALS = 200000
DEFAULT_MAX_HEIGHT = 60


def default_budget():
    """Budget from QAFFINE_BUDGET ("monomials" or "monomials,height")."""
    raw = os.environ.get("QAFFINE_BUDGET", "").strip()
    if not raw:
        return DEFAULT_MAX_MONOMIALS, DEFAULT_MAX_HEIGHT
    parts = [p.strip() for p in raw.split(",")]
    try:
        mono = int(parts[0]) if parts[0] else DEFAULT_MAX_MONOMIALS
        height = int(parts[1]) if len(parts) > 1 and parts[1] else DEFAULT_MAX_HEIGHT
    except ValueError as exc:
        raise ValueError(f"QAFFINE_BUDGET must look like '200000' or '200000,60', got {raw!r}") from exc
    return mono, height


class FMIncomplete(RuntimeError):
    """Raised by callers that need a certified character but the run did not finish."""


class NotCertified(RuntimeError):
    """The FM output could not be certified to be a q-character."""


@dataclass
class FMResult:
    highest: LMonomial
    character: QPolynomial
    dominants: list
    status: str
    stats: dict = field(default_factory=dict)
    heights: dict = field(default_factory=dict, repr=False)

    @property
    def completed(self):
        return self.status == "completed"

    @property
    def certified(self):
        return self.completed and len(self.dominants) == 1


@lru_cache(maxsize=50000)
def _expansion(rs: RootSystem, i, part: LMonomial):
    """Terms of b_i for an i-part: list of (alpha^{-1} product, coefficient, count).

    The diagonal term (no alpha) is omitted.
    """
    d = rs.d(i)
    strings = q_factorize(rescale(part, d))
    per_string = []
    for f in strings:
        options = []
        for shifts in string_terms(f.length, f.center, f.orbit):
            mono = ONE
            for s in shifts:
                o, k = unscale_key(f.orbit, s, d)
                mono = mono * simple_root_monomial(rs, i, k, o)
            options.append((mono.inverse(), len(shifts)))
        per_string.append(options)
    acc = defaultdict(int)
    counts = {}
    for choice in product(*per_string):
        mono = ONE
        t = 0
        for m, c in choice:
            mono = mono * m
            t += c
        if t:
            acc[mono] += 1
            counts[mono] = t
    return tuple((m, c, counts[m]) for m, c in sorted(acc.items(), key=lambda x: x[0].items))


def expand_i(rs: RootSystem, i, m: LMonomial) -> QPolynomial:
    """The operator b_i: 0 unless the i-coordinate of m is a polynomial."""
    part = m.part(i)
    if not is_dominant(part):
        return QPolynomial()
    out = QPolynomial({m: 1})
    for ratio, c, _ in _expansion(rs, i, part):
        out.add(m * ratio, c)
    return out


def fm_run(rs: RootSystem, pi: LMonomial, max_monomials=None, max_height=None,
           tie_break=None) -> FMResult:
    """Run the algorithm from a dominant monomial, level by level in height.

    ``tie_break`` optionally reorders monomials within a height level; the
    output does not depend on it because every expansion moves strictly up
    in height.
    """
    if not is_dominant(pi):
        raise ValueError(f"{format_monomial(pi)} is not dominant")
    dm, dh = default_budget()
    max_monomials = dm if max_monomials is None else max_monomials
    max_height = dh if max_height is None else max_height
    nodes = list(rs.nodes)

    s = {pi: 1}
    heights = {pi: 0}
    s_i = defaultdict(lambda: defaultdict(int))
    levels = defaultdict(set)
    levels[0].add(pi)
    h = 0
    status = "completed"
    seen = 1
    while h in levels:
        level = levels.pop(h)
        ordered = sorted(level, key=lambda m: m.items)
        if tie_break is not None:
            ordered = tie_break(ordered)
        if h > 0:
            for m in ordered:
                val = max(s_i[m].values(), default=0)
                s[m] = val
                if val:
                    heights[m] = h
        if h >= max_height and any(_expandable(m, s, s_i, nodes) for m in ordered):
            status = "budget_exceeded"
            break
        for m in ordered:
            sm = s.get(m, 0)
            if not sm:
                continue
            row = s_i.get(m, {})
            for i in nodes:
                c = sm - row.get(i, 0)
                if c <= 0:
                    continue
                part = m.part(i)
                if not is_dominant(part):
                    continue
                for ratio, coeff, t in _expansion(rs, i, part):
                    target = m * ratio
                    tgt_row = s_i[target]
                    if not tgt_row:
                        seen += 1
                    tgt_row[i] += c * coeff
                    levels[h + t].add(target)
        if seen > max_monomials:
            status = "budget_exceeded"
            break
        h += 1
    char = QPolynomial({m: c for m, c in s.items() if c})
    dominants = sorted(((m, c) for m, c in char.items() if is_dominant(m)), key=lambda x: (heights.get(x[0], 0), x[0].items))
    stats = {
        "monomials": len(char),
        "max_height": max((heights[m] for m in char), default=0),
        "visited": seen,
    }
    return FMResult(pi, char, dominants, status, stats, {m: heights[m] for m in char})


def _expandable(m, s, s_i, nodes):
    sm = s.get(m, 0)
    if not sm:
        return False
    row = s_i.get(m, {})
    for i in nodes:
        part = m.part(i)
        if sm - row.get(i, 0) > 0 and part.items and is_dominant(part):
            return True
    return False


def classify(result: FMResult):
    if not result.completed:
        raise FMIncomplete("classification needs a completed run")
    return {
        "special": len(result.dominants) == 1,
        "dominant_count": len(result.dominants),
        "quasi_minuscule": all(c <= 1 for c in result.character.values()),
    }


def certified_qchar(rs, pi, max_monomials=None, max_height=None) -> QPolynomial:
    res = fm_run(rs, pi, max_monomials, max_height)
    if not res.completed:
        raise FMIncomplete(f"FM run from {format_monomial(pi)} exceeded its budget")
    if not res.certified:
        raise NotCertified(f"FM output from {format_monomial(pi)} has {len(res.dominants)} dominant monomials")
    return res.character


@lru_cache(maxsize=None)
def fundamental_qchar(rs: RootSystem, i) -> QPolynomial:
    return certified_qchar(rs, LMonomial.Y(i, 0))


def _relabel(p: QPolynomial, shift, orbit):
    moved = twist_tau(p, shift)
    if orbit == "0":
        return moved
    return QPolynomial({LMonomial({(i, orbit, k): e for (i, _, k), e in m.items}): c for m, c in moved.items()})


def weyl_module_qchar(rs: RootSystem, pi: LMonomial, order=None) -> QPolynomial:
    """Product of the fundamental q-characters over the fundamental factors of pi."""
    if not is_dominant(pi):
        raise ValueError(f"{format_monomial(pi)} is not dominant")
    factors = []
    for (i, o, k), e in pi.items:
        factors.extend([(i, o, k)] * e)
    if order is not None:
        factors = order(factors)
    out = QPolynomial({ONE: 1})
    for i, o, k in factors:
        out = out * _relabel(fundamental_qchar(rs, i), k, o)
    return out


def a_weyl_oracle(rs: RootSystem, pi: LMonomial) -> QPolynomial:
    """Closed form of ch_q W(pi) for type A with pi supported on node 1."""
    if rs.series != "A":
        raise ValueError("the closed form is stated for type A only")
    if any(i != 1 for i in pi.nodes()) or not is_dominant(pi):
        raise ValueError("pi must be a dominant monomial on node 1")
    n = rs.rank
    out = QPolynomial({ONE: 1})
    for (_, o, a), r in pi.items:
        part = QPolynomial()
        for comp in _compositions(r, n + 1):
            coeff = 1
            left = r
            for m in comp:
                coeff *= comb(left, m)
                left -= m
            mono = {}
            for i in range(1, n + 1):
                top = comp[i - 1]
                below = comp[i]
                if top:
                    mono[(i, o, a + i - 1)] = mono.get((i, o, a + i - 1), 0) + top
                if below:
                    mono[(i, o, a + i + 1)] = mono.get((i, o, a + i + 1), 0) - below
            part.add(LMonomial(mono), coeff)
        out = out * part
    return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
