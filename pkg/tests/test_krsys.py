import pytest
from hypothesis import given, settings, strategies as st

from qaffine.cartan import ClassicalCharacter, build_root_system, decompose_character
from qaffine.krsys import (
    a3_witness,
    fermionic_character,
    format_nu,
    gbinom,
    kr_highest,
    kr_identity_verify,
    kr_qchar,
    kr_small_criterion,
    node_class,
    nu_weight,
    parse_nu,
    q_system_verify,
    stabilization_check,
    t_system_verify,
    vacancy,
)
from qaffine.lweight import LMonomial, le_order, parse_monomial, restrict, root_factorization

A1, A2, A3, B2, G2, D4 = (build_root_system(n) for n in ("A1", "A2", "A3", "B2", "G2", "D4"))


def test_kr_highest_ascending():
    assert kr_highest(A2, 1, 3) == parse_monomial("Y[1;0]*Y[1;2]*Y[1;4]")
    assert kr_highest(B2, 1, 2, shift=1) == parse_monomial("Y[1;1]*Y[1;5]")
    assert kr_highest(B2, 2, 0) == LMonomial()


@pytest.mark.parametrize("rs,i,k", [(A2, 1, 2), (B2, 1, 2), (B2, 2, 3), (G2, 1, 2), (A3, 2, 2)])
def test_kr_top_component(rs, i, k):
    dec = decompose_character(rs, restrict(rs, kr_qchar(rs, i, k)))
    top = tuple(k if j == i else 0 for j in rs.nodes)
    assert dec[0] == (top, 1)


@pytest.mark.parametrize("rs,k", [(A1, 1), (A1, 2), (A2, 1), (A2, 2), (B2, 1), (B2, 2), (G2, 1), (G2, 2)])
def test_t_system_small(rs, k):
    for i in rs.nodes:
        ok, lhs, rhs = t_system_verify(rs, i, k, shift=3)
        assert ok, (rs.name, i, k)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_q_system_sl2(k):
    ok, lhs, rhs = q_system_verify(A1, 1, k)
    assert ok
    q = lambda j: restrict(A1, kr_qchar(A1, 1, j))
    one = ClassicalCharacter({(0,): 1})
    assert q(k) * q(k) == q(k + 1) * q(k - 1) + one


def test_t_system_needs_positive_k():
    with pytest.raises(ValueError):
        t_system_verify(A1, 1, 0)


def test_gbinom():
    assert gbinom(5, 2) == 10
    assert gbinom(-1, 1) == -1
    assert gbinom(-2, 2) == 3
    assert gbinom(1, 2) == 0
    assert gbinom(7, 0) == 1


def test_nu_roundtrip():
    nu = parse_nu("2:1=1, 1:3=2")
    assert nu == {(2, 1): 1, (1, 3): 2}
    assert format_nu(nu) == "1:3=2,2:1=1"
    assert nu_weight(A2, nu) == (6, 1)
    for bad in ["1:1", "a:1=1", "1:0=1"]:
        with pytest.raises(ValueError):
            parse_nu(bad)


def test_sl2_fermionic():
    assert fermionic_character(A1, {(1, 1): 1}) == {(1,): 1, (-3,): -1}


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["A1", "A2", "B2"]), st.data())
def test_fermionic_top_term(name, data):
    rs = build_root_system(name)
    i = data.draw(st.integers(1, rs.rank))
    k = data.draw(st.integers(1, 2))
    nu = {(i, k): 1}
    assert fermionic_character(rs, nu)[nu_weight(rs, nu)] == 1


def test_vacancy_is_integral_for_b2():
    nu = {(1, 1): 1}
    for N in [{(1, 1): 1}, {(2, 1): 1}, {(2, 2): 1}, {(1, 1): 1, (2, 3): 1}]:
        for i in (1, 2):
            for k in (1, 2, 3):
                assert vacancy(B2, nu, N, i, k).denominator == 1


@pytest.mark.parametrize("rs,nu", [
    (A1, {(1, 1): 1}), (A1, {(1, 2): 1}), (A1, {(1, 1): 2}),
    (A2, {(1, 1): 1}), (A2, {(2, 2): 1}), (B2, {(1, 1): 1}), (B2, {(2, 1): 1}),
])
def test_kr_identity(rs, nu):
    ok, lhs, rhs = kr_identity_verify(rs, nu)
    assert ok
    top = nu_weight(rs, nu)
    assert lhs[top] == 1 and set(lhs) == set(rhs)


def test_small_criterion_table():
    for rs in (A1, A2):
        for i in rs.nodes:
            for k in range(1, 7):
                assert kr_small_criterion(rs, i, k)
    assert not kr_small_criterion(A3, 2, 3)
    assert kr_small_criterion(A3, 2, 2)
    assert not kr_small_criterion(D4, 2, 3)
    for leaf in (1, 3, 4):
        assert node_class(D4, leaf)["k_i"] == 2
        assert kr_small_criterion(D4, leaf, 3)
        assert not kr_small_criterion(D4, leaf, 4)


def test_a3_witness():
    lower, upper = a3_witness()
    assert le_order(A3, lower, upper)
    assert root_factorization(A3, lower / upper) == {(2, "0", 0): -1}


@pytest.mark.parametrize("rs", [A1, A2])
def test_stabilization(rs):
    for i in rs.nodes:
        ok, tables = stabilization_check(rs, i, 2, [3, 4, 5])
        assert ok
        assert tables[3][()] == 1


def test_stabilization_trivial_height():
    assert stabilization_check(A1, 1, 0, [1, 2]) == (True, {})
    with pytest.raises(ValueError):
        stabilization_check(A1, 1, -1, [1])
