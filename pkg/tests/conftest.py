from hypothesis import strategies as st

from qaffine.cartan import build_root_system
from qaffine.lweight import LMonomial

SMALL_TYPES = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"]


def monomials(rank, max_factors=4, shifts=(-6, 6), powers=(-2, 2), orbits=("0",)):
    key = st.tuples(st.integers(1, rank), st.sampled_from(orbits), st.integers(*shifts))
    exp = st.integers(*powers).filter(bool)
    return st.dictionaries(key, exp, max_size=max_factors).map(LMonomial)


def dominant_sl2(max_degree=5, shifts=(-4, 6)):
    return st.lists(st.integers(*shifts), min_size=0, max_size=max_degree).map(
        lambda ks: LMonomial([((1, "0", k), 1) for k in ks])
    )


def root_systems(names=SMALL_TYPES):
    return st.sampled_from(names).map(build_root_system)
