import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qaffine.cartan import (
    ClassicalCharacter,
    RootSystemError,
    build_root_system,
    decompose_character,
    is_reduced,
    weyl_action,
    weyl_character,
    weyl_dimension,
    word_length,
)


def test_rank_one_data():
    rs = build_root_system("A", 1)
    assert rs.cartan == ((2,),)
    assert [rs.d(1)] == [1]
    assert len(rs.posroots) == 1


def test_b2_long_root_first():
    rs = build_root_system("B2")
    assert (rs.a(1, 2), rs.a(2, 1)) == (-1, -2)
    assert (rs.d(1), rs.d(2)) == (2, 1)


def test_g2_roots():
    rs = build_root_system("G2")
    assert len(rs.posroots) == 6
    assert sum(rs.theta) == 5


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "G2", "F4", "E6"])
def test_symmetrized_cartan(name):
    rs = build_root_system(name)
    for i in rs.nodes:
        for j in rs.nodes:
            assert rs.d(i) * rs.a(i, j) == rs.d(j) * rs.a(j, i)


def test_bad_types_rejected():
    for args in [("Z", 2), ("D", 3), ("E", 5), ("G", 3)]:
        with pytest.raises(RootSystemError):
            build_root_system(*args)


def test_weyl_action_examples():
    a1 = build_root_system("A1")
    assert weyl_action(a1, [1], (1,)) == (-1,)
    a2 = build_root_system("A2")
    assert weyl_action(a2, [1, 2, 1], (1, 0)) == weyl_action(a2, [2, 1, 2], (1, 0)) == (0, -1)
    assert weyl_action(a2, [], (3, 1)) == (3, 1)


def _reduced_words(rs, length):
    for w in itertools.product(rs.nodes, repeat=length):
        if is_reduced(rs, w):
            yield list(w)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "C3"])
def test_longest_word_independence(name):
    rs = build_root_system(name)
    N = len(rs.posroots)
    words = list(itertools.islice(_reduced_words(rs, N), 40))
    assert len(words) >= 2
    sample = list(itertools.product(range(-1, 2), repeat=rs.rank))[:100]
    for lam in sample:
        images = {weyl_action(rs, w, lam) for w in words}
        assert len(images) == 1


def test_word_length():
    rs = build_root_system("A2")
    assert word_length(rs, [1, 1]) == 0
    assert word_length(rs, rs.w0_word) == 3


@pytest.mark.parametrize("name,lam,dim", [("A1", (2,), 3), ("A2", (1, 1), 8), ("B2", (1, 0), 5), ("G2", (1, 0), 7), ("G2", (0, 1), 14)])
def test_weyl_dimension_examples(name, lam, dim):
    rs = build_root_system(name)
    assert weyl_dimension(rs, lam) == dim
    assert weyl_character(rs, lam).dimension() == dim


def test_sl2_string():
    rs = build_root_system("A1")
    assert weyl_character(rs, (2,)) == ClassicalCharacter({(2,): 1, (0,): 1, (-2,): 1})


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "G2", "B2", "C2", "A4"])
def test_freudenthal_matches_weyl_dimension(name):
    rs = build_root_system(name)
    bound = 2 if rs.rank <= 3 else 1
    for lam in itertools.product(range(bound + 1), repeat=rs.rank):
        ch = weyl_character(rs, lam)
        assert ch.dimension() == weyl_dimension(rs, lam)
        assert decompose_character(rs, ch) == [(lam, 1)]


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "B3"])
def test_character_is_weyl_invariant(name):
    rs = build_root_system(name)
    for lam in itertools.product(range(2), repeat=rs.rank):
        ch = weyl_character(rs, lam)
        for i in rs.nodes:
            for mu, c in ch.items():
                assert ch.get(weyl_action(rs, [i], mu), 0) == c


def test_clebsch_gordan():
    rs = build_root_system("A1")
    v = weyl_character(rs, (1,))
    assert decompose_character(rs, v * v) == [((2,), 1), ((0,), 1)]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2"]), st.lists(st.integers(0, 2), min_size=2, max_size=2),
       st.lists(st.integers(0, 1), min_size=2, max_size=2))
def test_decompose_product(name, lam, mu):
    rs = build_root_system(name)
    prod = weyl_character(rs, tuple(lam)) * weyl_character(rs, tuple(mu))
    dec = decompose_character(rs, prod)
    total = ClassicalCharacter()
    for nu, m in dec:
        total = total + weyl_character(rs, nu) * ClassicalCharacter({(0,) * rs.rank: m})
    assert total == prod
    assert dec[0][0] == tuple(a + b for a, b in zip(lam, mu))


def test_inner_product_is_rational():
    rs = build_root_system("B2")
    assert isinstance(rs.inner(rs.rho, rs.rho), Fraction)
