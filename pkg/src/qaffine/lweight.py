"""The l-weight lattice: Laurent monomials in Y_{i,a} and the group ring Z[P].

A spectral parameter ``a = b_orbit * q**shift`` is stored as the pair
``(orbit, shift)``.  Everything in this package moves parameters by integer
powers of q, so distinct orbits never interact.
"""
from __future__ import annotations

import json
import re
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

from .cartan import ClassicalCharacter, RootSystem

DEFAULT_ORBIT = "0"


class LMonomial:
    """Immutable product of Y_{i,(orbit,shift)}^e with nonzero exponents.

    ``items`` is a sorted tuple of ``((node, orbit, shift), exponent)``.
    """

    __slots__ = ("items", "_hash")

    def __init__(self, data=()):
        if isinstance(data, dict):
            pairs = data.items()
        else:
            pairs = data
        acc = defaultdict(int)
        for key, e in pairs:
            if len(key) == 2:
                key = (key[0], DEFAULT_ORBIT, key[1])
            acc[(int(key[0]), str(key[1]), int(key[2]))] += int(e)
        self.items = tuple(sorted((k, e) for k, e in acc.items() if e))
        self._hash = hash(self.items)

    @classmethod
    def _raw(cls, items):
        obj = cls.__new__(cls)
        obj.items = items
        obj._hash = hash(items)
        return obj

    @classmethod
    def from_dict(cls, d):
        return cls._raw(tuple(sorted((k, e) for k, e in d.items() if e)))

    @classmethod
    def Y(cls, i, shift=0, power=1, orbit=DEFAULT_ORBIT):
        return cls._raw((((i, orbit, shift), power),)) if power else cls._raw(())

    def as_dict(self):
        return dict(self.items)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, LMonomial) and self.items == other.items

    def __lt__(self, other):
        return self.items < other.items

    def __mul__(self, other):
        if not self.items:
            return other
        if not other.items:
            return self
        d = dict(self.items)
        for k, e in other.items:
            v = d.get(k, 0) + e
            if v:
                d[k] = v
            else:
                del d[k]
        return LMonomial.from_dict(d)

    def __pow__(self, n):
        return LMonomial._raw(tuple((k, e * n) for k, e in self.items)) if n else ONE

    def inverse(self):
        return self ** -1

    def __truediv__(self, other):
        return self * other.inverse()

    def __bool__(self):
        return True

    def is_identity(self):
        return not self.items

    def nodes(self):
        return sorted({k[0] for k, _ in self.items})

    def orbits(self):
        return sorted({k[1] for k, _ in self.items})

    def shifts(self):
        return [k[2] for k, _ in self.items]

    def exponent(self, i, shift, orbit=DEFAULT_ORBIT):
        return dict(self.items).get((i, orbit, shift), 0)

    def degree(self):
        return sum(e for _, e in self.items)

    def part(self, i):
        """The coordinate-i factor as its own monomial."""
        return LMonomial._raw(tuple(it for it in self.items if it[0][0] == i))

    def without(self, i):
        return LMonomial._raw(tuple(it for it in self.items if it[0][0] != i))

    def __repr__(self):
        return f"LMonomial({format_monomial(self)!r})"

    def __str__(self):
        return format_monomial(self)


ONE = LMonomial()


def mono_mul(m1, m2):
    return m1 * m2


def classical_weight(rs: RootSystem, m: LMonomial):
    w = [0] * rs.rank
    for (i, _, _), e in m.items:
        w[i - 1] += e
    return tuple(w)


def is_dominant(m: LMonomial):
    return all(e > 0 for _, e in m.items)


# ---------------------------------------------------------------------------
# simple root monomials and the order


def simple_root_monomial(rs: RootSystem, i, shift=0, orbit=DEFAULT_ORBIT) -> LMonomial:
    """alpha_{i,a} = (T_i pi_{i,a})^{-1} pi_{i,a} written out in Y-variables."""
    return _alpha(rs, i, orbit, shift)


@lru_cache(maxsize=200000)
def _alpha(rs, i, orbit, shift):
    d = {(i, orbit, shift): 1, (i, orbit, shift + 2 * rs.d(i)): 1}
    for j in rs.nodes:
        if j == i:
            continue
        a = rs.a(j, i)
        for off in _neighbour_offsets(rs, i, a):
            key = (j, orbit, shift + off)
            d[key] = d.get(key, 0) - 1
    return LMonomial.from_dict(d)


def _neighbour_offsets(rs, i, a_ji):
    """Shifts at which coordinate j picks up a copy of coordinate i under T_i."""
    if a_ji == 0:
        return ()
    if a_ji == -1:
        return (rs.d(i),)
    if a_ji == -2:
        return (1, 3)
    if a_ji == -3:
        return (1, 3, 5)
    raise ValueError(f"unexpected Cartan entry {a_ji}")


class NotInRootLattice(ValueError):
    pass


def root_factorization(rs: RootSystem, r: LMonomial):
    """Write r as a product of alpha_{i,a}^{e}; returns {(i, orbit, shift): e}.

    Every alpha_{i,(o,k)} has Y_{i,(o,k)} as its unique factor of lowest shift
    and Y_{i,(o,k+2d_i)} as its unique factor of highest shift.  Hence in any
    factorization the lowest alpha base equals the lowest shift of r and every
    alpha top lies at or below the highest shift of r; eliminating from the
    bottom therefore terminates and the factorization is unique.
    """
    out = {}
    rest = dict(r.items)
    by_orbit = defaultdict(list)
    for (i, o, k), _ in r.items:
        by_orbit[o].append(k)
    ceiling = {o: max(ks) for o, ks in by_orbit.items()}
    while rest:
        (i, o, k) = min(rest, key=lambda key: (key[1], key[2], key[0]))
        e = rest[(i, o, k)]
        if k + 2 * rs.d(i) > ceiling[o]:
            raise NotInRootLattice(f"{format_monomial(r)} is not a product of simple root monomials")
        out[(i, o, k)] = out.get((i, o, k), 0) + e
        for key, f in _alpha(rs, i, o, k).items:
            v = rest.get(key, 0) - e * f
            if v:
                rest[key] = v
            else:
                rest.pop(key, None)
    return out


def in_root_lattice(rs, r):
    try:
        root_factorization(rs, r)
        return True
    except NotInRootLattice:
        return False


def le_order(rs: RootSystem, m1: LMonomial, m2: LMonomial):
    """True iff m1 is below m2, i.e. m1 m2^{-1} is a product of alpha^{-1}'s."""
    try:
        fac = root_factorization(rs, m1 / m2)
    except NotInRootLattice:
        return False
    return all(e < 0 for e in fac.values())


def height(rs: RootSystem, r: LMonomial):
    """Number of alpha^{+-1} factors in r, which must lie in Q+ or Q-."""
    fac = root_factorization(rs, r)
    signs = {e > 0 for e in fac.values()}
    if len(signs) > 1:
        raise NotInRootLattice(f"{format_monomial(r)} is neither in Q+ nor in Q-")
    return sum(abs(e) for e in fac.values())


def is_right_negative(m: LMonomial):
    """At the highest shift of each orbit every exponent is negative."""
    if m.is_identity():
        raise ValueError("right-negativity is undefined for the trivial monomial")
    top = {}
    for (i, o, k), e in m.items:
        top[o] = max(top.get(o, k), k)
    return all(e < 0 for (i, o, k), e in m.items if k == top[o])


# ---------------------------------------------------------------------------
# the group ring


class QPolynomial(dict):
    """Integer combination of LMonomials; zero coefficients are never stored."""

    def __init__(self, data=None):
        super().__init__()
        if data:
            items = data.items() if isinstance(data, dict) else data
            for m, c in items:
                self.add(m, c)

    @classmethod
    def monomial(cls, m, c=1):
        return cls({m: c})

    def add(self, m, c):
        v = self.get(m, 0) + c
        if v:
            self[m] = v
        elif m in self:
            del self[m]

    def __add__(self, other):
        out = QPolynomial(self)
        for m, c in other.items():
            out.add(m, c)
        return out

    def __sub__(self, other):
        out = QPolynomial(self)
        for m, c in other.items():
            out.add(m, -c)
        return out

    def __neg__(self):
        return QPolynomial({m: -c for m, c in self.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return QPolynomial({m: c * other for m, c in self.items()})
        if isinstance(other, LMonomial):
            return QPolynomial({m * other: c for m, c in self.items()})
        acc = defaultdict(int)
        for m1, c1 in self.items():
            for m2, c2 in other.items():
                acc[m1 * m2] += c1 * c2
        return QPolynomial(acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPolynomial({ONE: other})
        return dict.__eq__(self, other)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def coefficient(self, m):
        return self.get(m, 0)

    def __repr__(self):
        return f"QPolynomial({format_polynomial(self)!r})"


def qpoly_product(polys):
    out = QPolynomial({ONE: 1})
    for p in polys:
        out = out * p
    return out


def restrict(rs: RootSystem, p: QPolynomial) -> ClassicalCharacter:
    out = defaultdict(int)
    for m, c in p.items():
        out[classical_weight(rs, m)] += c
    return ClassicalCharacter(out)


def dominant_monomials(p: QPolynomial):
    return [(m, c) for m, c in sort_monomials(p) if is_dominant(m)]


def twist_tau(p, s):
    """tau: every spectral parameter is multiplied by q^s."""
    def move(m):
        return LMonomial._raw(tuple(((i, o, k + s), e) for (i, o, k), e in m.items))

    if isinstance(p, LMonomial):
        return move(p)
    return QPolynomial({move(m): c for m, c in p.items()})


def twist_sigma(rs: RootSystem, p):
    """sigma: Y_{i,(o,k)} -> Y_{-w0(i),(o, 2 d_i - k)} (single orbit only)."""
    inv = rs.diagram_involution

    def move(m):
        if len(m.orbits()) > 1:
            raise ValueError("sigma twist requires a single-orbit monomial")
        return LMonomial({(inv[i], o, 2 * rs.d(i) - k): e for (i, o, k), e in m.items})

    if isinstance(p, LMonomial):
        return move(p)
    return QPolynomial({move(m): c for m, c in p.items()})


def twist(rs, p, kind, shift=0):
    if kind == "tau":
        return twist_tau(p, shift)
    if kind == "sigma":
        return twist_sigma(rs, p)
    raise ValueError(f"unknown twist {kind!r}")


# ---------------------------------------------------------------------------
# text and json forms


def _fmt_factor(letter, i, o, k, e):
    inner = f"{i};{k}" if o == DEFAULT_ORBIT else f"{i};{k};{o}"
    return f"{letter}[{inner}]" + ("" if e == 1 else f"^{e}")


def format_monomial(m: LMonomial):
    if m.is_identity():
        return "1"
    return "*".join(_fmt_factor("Y", i, o, k, e) for (i, o, k), e in m.items)


def sort_monomials(p: QPolynomial, rs: RootSystem | None = None):
    """Entries ordered by descending classical height, then canonical key."""
    def key(item):
        m = item[0]
        if rs is None:
            h = -m.degree()
        else:
            h = -rs.root_height(classical_weight(rs, m))
        return (h, m.items)

    return sorted(p.items(), key=key)


def format_polynomial(p: QPolynomial, rs: RootSystem | None = None):
    if not p:
        return "0"
    parts = []
    for m, c in sort_monomials(p, rs):
        body = format_monomial(m)
        if c == 1:
            parts.append(body)
        elif body == "1":
            parts.append(str(c))
        else:
            parts.append(f"{c}*{body}")
    return " + ".join(parts).replace("+ -", "- ")


_FACTOR = re.compile(r"\s*([YA])\[\s*(\d+)\s*;\s*(-?\d+)\s*(?:;\s*([^\]\s]+)\s*)?\](?:\^\s*\(?\s*(-?\d+)\s*\)?)?\s*")


def parse_monomial(text, rs: RootSystem | None = None) -> LMonomial:
    """Parse ``Y[1;0]*Y[2;3]^-1``; ``A[i;k]`` needs a root system."""
    text = text.strip()
    if text in ("", "1"):
        return ONE
    out = ONE
    for chunk in text.split("*"):
        m = _FACTOR.fullmatch(chunk)
        if not m:
            raise ValueError(f"cannot parse monomial factor {chunk!r}")
        letter, i, k, orbit, e = m.groups()
        i, k = int(i), int(k)
        e = int(e) if e is not None else 1
        orbit = orbit or DEFAULT_ORBIT
        if letter == "Y":
            out = out * LMonomial.Y(i, k, e, orbit)
        else:
            if rs is None:
                raise ValueError("A[i;k] factors need a root system")
            out = out * simple_root_monomial(rs, i, k, orbit) ** e
    if rs is not None:
        bad = [i for i in out.nodes() if not 1 <= i <= rs.rank]
        if bad:
            raise ValueError(f"node(s) {bad} out of range for {rs.name}")
    return out


def monomial_to_json(m: LMonomial, coeff=1):
    return {
        "coeff": coeff,
        "factors": [
            {"node": i, "orbit": o, "shift": k, "power": e} for (i, o, k), e in m.items
        ],
    }


def monomial_from_json(obj):
    m = LMonomial({(f["node"], f.get("orbit", DEFAULT_ORBIT), f["shift"]): f["power"] for f in obj["factors"]})
    return m, obj.get("coeff", 1)


def polynomial_to_json(p: QPolynomial, rs: RootSystem | None = None):
    return [monomial_to_json(m, c) for m, c in sort_monomials(p, rs)]


def polynomial_from_json(objs):
    return QPolynomial([monomial_from_json(o) for o in objs])


def format_latex(p: QPolynomial, rs: RootSystem | None = None):
    def mono(m):
        if m.is_identity():
            return "1"
        parts = []
        for (i, o, k), e in m.items:
            sub = f"{i},{k}" if o == DEFAULT_ORBIT else f"{i},{o}q^{{{k}}}"
            parts.append(f"Y_{{{sub}}}" + ("" if e == 1 else f"^{{{e}}}"))
        return " ".join(parts)

    terms = []
    for m, c in sort_monomials(p, rs):
        terms.append((str(c) + " " if c != 1 else "") + mono(m))
    return " + ".join(terms) if terms else "0"


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
