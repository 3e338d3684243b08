import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import dominant_sl2
from qaffine.cartan import build_root_system
from qaffine.fm import fm_run
from qaffine.lweight import LMonomial, is_right_negative, parse_monomial, restrict
from qaffine.sl2core import (
    StringFactor,
    factor_roots,
    general_position,
    is_q_factorization,
    minuscule_by_spacing,
    q_factorize,
    q_string,
    quasi_minuscule_by_spacing,
    rescale,
    sl2_simple_qchar,
    sl2_weyl_qchar,
    string_qchar,
    unscale_key,
    weyl_product_form,
    _roots,
)

A1 = build_root_system("A1")
P = parse_monomial


def test_strings():
    assert q_string(1, 0) == P("Y[1;0]")
    assert q_string(2, 0) == P("Y[1;-1]*Y[1;1]")
    assert q_string(3, 0) == P("Y[1;-2]*Y[1;0]*Y[1;2]")


def test_factorization_examples():
    assert q_factorize(P("Y[1;-1]*Y[1;1]")) == [StringFactor(2, "0", 0)]
    assert q_factorize(P("Y[1;0]^2")) == [StringFactor(1, "0", 0)] * 2
    assert q_factorize(P("Y[1;0]*Y[1;6]")) == [StringFactor(1, "0", 0), StringFactor(1, "0", 6)]


@pytest.mark.parametrize("m", range(6))
def test_string_character(m):
    ch = string_qchar(m, 3)
    assert len(ch) == m + 1
    assert restrict(A1, ch) == {(m - 2 * j,): 1 for j in range(m + 1)}


@settings(max_examples=200, deadline=None)
@given(dominant_sl2())
def test_factorization_is_valid(pi):
    fac = q_factorize(pi)
    prod = LMonomial()
    for f in fac:
        prod = prod * f.monomial()
    assert prod == pi
    assert is_q_factorization(fac)


@settings(max_examples=100, deadline=None)
@given(dominant_sl2(6), st.randoms(use_true_random=False))
def test_factorization_independent_of_extraction_order(pi, rnd):
    """Pull strings out in a random order that only respects the spacing rule."""
    roots = _roots(pi)
    expected = sorted(q_factorize(pi))
    pool = +roots
    found = []
    while pool:
        runs = []
        for (o, k) in pool:
            length = 1
            while (o, k + 2 * length) in pool:
                length += 1
            if (o, k - 2) not in pool:
                runs.append((length, o, k))
        longest = max(r[0] for r in runs)
        length, o, k = rnd.choice([r for r in runs if r[0] == longest])
        for t in range(length):
            pool[(o, k + 2 * t)] -= 1
        pool = +pool
        found.append(StringFactor(length, o, k + length - 1))
    assert sorted(found) == expected


@settings(max_examples=200, deadline=None)
@given(dominant_sl2())
def test_weyl_product_identity(pi):
    assert sl2_weyl_qchar(pi) == weyl_product_form(pi)


@settings(max_examples=200, deadline=None)
@given(dominant_sl2())
def test_weyl_thin_iff_distinct_roots(pi):
    distinct = all(e == 1 for _, e in pi.items)
    assert all(c <= 1 for c in sl2_weyl_qchar(pi).values()) == distinct


@settings(max_examples=200, deadline=None)
@given(dominant_sl2())
def test_spacing_criteria(pi):
    fac = q_factorize(pi)
    ch = sl2_simple_qchar(pi)
    dominant = [m for m in ch if all(e > 0 for _, e in m.items)]
    assert minuscule_by_spacing(fac) == (len(dominant) == 1)
    assert quasi_minuscule_by_spacing(fac) == (minuscule_by_spacing(fac) and all(c == 1 for c in ch.values()))


@settings(max_examples=60, deadline=None)
@given(dominant_sl2(4))
def test_fm_agrees_on_minuscule(pi):
    fac = q_factorize(pi)
    if not minuscule_by_spacing(fac):
        return
    res = fm_run(A1, pi)
    assert res.completed
    assert res.character == sl2_simple_qchar(pi)


@pytest.mark.parametrize("m", range(1, 5))
def test_string_terms_right_negative(m):
    res = fm_run(A1, q_string(m, 1))
    for mono in res.character:
        if mono != res.highest:
            assert is_right_negative(mono)


def test_distinct_orbits_do_not_interact():
    a = q_string(2, 0, "x")
    b = q_string(3, 1, "y")
    assert sorted(q_factorize(a * b)) == sorted([StringFactor(2, "x", 0), StringFactor(3, "y", 1)])


def test_general_position():
    y0, y2, y6 = P("Y[1;0]"), P("Y[1;2]"), P("Y[1;6]")
    assert general_position(y0, y6, "joint")
    assert not general_position(y0, y2, "joint")
    assert general_position(y2, y0, "oneSided")
    assert not general_position(y0, y2, "oneSided")
    with pytest.raises(ValueError):
        general_position(y0, y2, "sideways")


@settings(max_examples=100, deadline=None)
@given(st.integers(-9, 9), st.sampled_from([1, 2, 3]))
def test_rescale_roundtrip(k, d):
    m = LMonomial.Y(2, k)
    (_, o, s), _ = rescale(m, d).items[0]
    assert unscale_key(o, s, d) == ("0", k)


def test_factor_roots_step():
    from collections import Counter
    assert factor_roots(Counter({("0", 0): 1, ("0", 2): 1, ("0", 4): 1})) == [(3, "0", 0)]
