import itertools
import os

import pytest

from qaffine.cartan import build_root_system, weyl_action
from qaffine.fm import (
    FMIncomplete,
    a_weyl_oracle,
    certified_qchar,
    classify,
    default_budget,
    expand_i,
    fm_run,
    fundamental_qchar,
    weyl_module_qchar,
)
from qaffine.krsys import kr_highest
from qaffine.lweight import LMonomial, is_dominant, le_order, parse_monomial, restrict

P = parse_monomial
RANK3 = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"]


def test_a2_fundamental():
    rs = build_root_system("A2")
    ch = fm_run(rs, P("Y[1;0]")).character
    assert ch == {P("Y[1;0]"): 1, P("Y[1;2]^-1*Y[2;1]"): 1, P("Y[2;3]^-1"): 1}


@pytest.mark.parametrize("name", RANK3)
def test_fundamentals_special_and_below(name):
    rs = build_root_system(name)
    for i in rs.nodes:
        res = fm_run(rs, LMonomial.Y(i, 0))
        assert res.completed and classify(res)["special"]
        assert res.character[res.highest] == 1
        for m in res.character:
            assert le_order(rs, m, res.highest)
        ch = restrict(rs, res.character)
        for mu, c in ch.items():
            for j in rs.nodes:
                assert ch.get(weyl_action(rs, [j], mu), 0) == c


def _reverse(level):
    return list(reversed(level))


@pytest.mark.parametrize("name", RANK3)
def test_tie_break_independence(name):
    rs = build_root_system(name)
    for i in rs.nodes:
        for k in range(1, 4 if rs.rank <= 2 and name != "G2" else 3):
            pi = kr_highest(rs, i, k)
            a = fm_run(rs, pi)
            b = fm_run(rs, pi, tie_break=_reverse)
            assert a.character == b.character and a.status == b.status


def test_budget_exceeded_reports_partial_stats():
    rs = build_root_system("C3")
    res = fm_run(rs, P("Y[1;0]*Y[3;0]"), max_monomials=10)
    assert res.status == "budget_exceeded"
    assert res.stats["visited"] > 10
    with pytest.raises(FMIncomplete):
        classify(res)
    with pytest.raises(FMIncomplete):
        certified_qchar(rs, P("Y[1;0]*Y[3;0]"), max_monomials=10)


def test_height_budget():
    rs = build_root_system("A3")
    assert fm_run(rs, P("Y[2;0]"), max_height=1).status == "budget_exceeded"
    assert fm_run(rs, P("Y[2;0]"), max_height=10).completed


def test_environment_budget(monkeypatch):
    monkeypatch.setenv("QAFFINE_BUDGET", "5,7")
    assert default_budget() == (5, 7)
    monkeypatch.setenv("QAFFINE_BUDGET", "nonsense")
    with pytest.raises(ValueError):
        default_budget()
    monkeypatch.delenv("QAFFINE_BUDGET")
    assert default_budget() == (200000, 60)


def test_non_dominant_rejected():
    with pytest.raises(ValueError):
        fm_run(build_root_system("A2"), P("Y[1;0]^-1"))


def test_expand_i_on_non_polynomial_part_is_zero():
    rs = build_root_system("A2")
    assert expand_i(rs, 1, P("Y[1;2]^-1*Y[2;1]")) == {}
    assert len(expand_i(rs, 2, P("Y[1;2]^-1*Y[2;1]"))) == 2


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_weyl_module_order_independent(name):
    rs = build_root_system(name)
    pi = P("Y[1;0]*Y[2;1]*Y[1;4]")
    a = weyl_module_qchar(rs, pi)
    b = weyl_module_qchar(rs, pi, order=lambda fs: list(reversed(fs)))
    assert a == b
    dims = 1
    for i in (1, 2, 1):
        dims *= sum(fundamental_qchar(rs, i).values())
    assert sum(a.values()) == dims


@pytest.mark.parametrize("n", [1, 2, 3])
def test_type_a_weyl_closed_form(n):
    rs = build_root_system("A", n)
    for pi in [P("Y[1;0]"), P("Y[1;0]^2"), P("Y[1;0]*Y[1;4]"), P("Y[1;0]^2*Y[1;2]")]:
        assert weyl_module_qchar(rs, pi) == a_weyl_oracle(rs, pi)


def test_special_output_has_single_dominant():
    rs = build_root_system("B2")
    res = fm_run(rs, P("Y[2;0]*Y[2;2]"))
    assert [m for m in res.character if is_dominant(m)] == [res.highest]
