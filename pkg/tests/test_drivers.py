import io
import json
from fractions import Fraction
from math import comb

import pytest

from zfip.drivers import (BoundReport, RankData, all_minimal_forts, compute_parameter, format_fraction,
                          fort_number, fractional_zf, m_lower_bound_report, mr_edge_sum, mr_vertex_sum,
                          oracle_pti, rank_data_for, rank_data_small, read_rank_table, realized_pti,
                          write_rank_table, zf_via_cut_generation)
from zfip.forcing import is_fort, is_zfs, oracle_ft, oracle_minimal_forts, oracle_Z
from zfip.graph import Graph, edge_sum, family, random_gnp, read_graph6_file, vertex_sum
from zfip.milp import BUDGET_EXCEEDED, OPTIMAL, solve_lp
from zfip.models import build_fort_cover

from conftest import FIXTURES

C5 = family("cycle", 5)
N5 = read_graph6_file(FIXTURES / "graphs_n5.g6")


def lp_over_all_forts(g):
    return solve_lp(build_fort_cover(g, oracle_minimal_forts(g), relaxed=True)).objective_value


# -- integral cut loop

def test_cut_generation_examples():
    res = zf_via_cut_generation(C5)
    assert res.value == 2 and is_zfs(C5, res.witness)
    assert res.state.iterations <= 5
    k1 = zf_via_cut_generation(Graph(1))
    assert k1.value == 1 and k1.state.forts == [frozenset({0})]
    assert zf_via_cut_generation(family("hypercube", 3)).value == 4


@pytest.mark.parametrize("opts", [{}, {"add_all": True}, {"closure_fix": True}])
def test_cut_generation_matches_oracle(opts):
    for g in N5:
        res = zf_via_cut_generation(g, **opts)
        assert res.value == oracle_Z(g)[0]
        assert is_zfs(g, res.witness)
        # every cut is a distinct minimal fort
        assert len(set(res.state.forts)) == len(res.state.forts)
        assert set(res.state.forts) <= oracle_minimal_forts(g).as_set()


def test_cut_generation_log():
    buf = io.StringIO()
    zf_via_cut_generation(C5, log=buf)
    recs = [json.loads(line) for line in buf.getvalue().splitlines()]
    assert recs[-1]["event"] == "done"
    assert all(r["event"] == "cut" for r in recs[:-1])


# -- fractional loop

def test_fractional_examples():
    res = fractional_zf(C5)
    assert res.value == Fraction(5, 3)
    assert res.state.certificate >= 1
    assert res.state.iterations <= 5
    assert fractional_zf(Graph(1)).value == 1
    assert fractional_zf(family("path", 2)).value == 1


def test_fractional_weights_cover_every_fort():
    for seed in range(4):
        g = random_gnp(8, 0.4, seed)
        res = fractional_zf(g)
        assert res.value == lp_over_all_forts(g)
        for f in oracle_minimal_forts(g):
            assert sum(res.witness[v] for v in f) >= 1


def test_fractional_matches_lp_over_all_forts():
    for g in N5:
        res = fractional_zf(g)
        assert res.value == lp_over_all_forts(g)
        assert len(res.state.forts) <= len(oracle_minimal_forts(g))


# -- propagation time interval

def test_pti_hypercubes():
    assert realized_pti(family("hypercube", 2), T=2).times == (1,)
    q3 = realized_pti(family("hypercube", 3), T=4)
    assert q3.times == (1, 2) and (q3.pt, q3.PT, q3.Z) == (1, 2, 4)


@pytest.mark.parametrize("fix_size", [True, False])
def test_pti_matches_oracle(fix_size):
    for g in N5:
        res = realized_pti(g, fix_size=fix_size)
        assert res.status == OPTIMAL
        assert res.times == oracle_pti(g)
        assert list(res.times) == sorted(set(res.times))


def test_pti_trivial():
    assert realized_pti(Graph(1)).times == (0,)


# -- minimal forts

def test_all_minimal_forts_examples():
    assert all_minimal_forts(C5).as_set() == oracle_minimal_forts(C5).as_set()
    assert len(all_minimal_forts(family("star", 9))) == comb(8, 2)
    assert len(all_minimal_forts(Graph(1))) == 1


@pytest.mark.parametrize("size_floor", [True, False])
def test_all_minimal_forts_matches_oracle(size_floor):
    for g in N5 + [random_gnp(8, 0.3, s) for s in range(3)]:
        forts = all_minimal_forts(g, size_floor=size_floor)
        assert forts.complete
        forts.check(g)
        assert forts.as_set() == oracle_minimal_forts(g).as_set()


def test_all_minimal_forts_budget():
    forts = all_minimal_forts(family("path", 12), node_limit=1, time_limit=0.0)
    assert not forts.complete
    forts.check(family("path", 12))


# -- fort number

@pytest.mark.parametrize("g,ft", [(C5, 1), (family("star", 7), 3), (family("path", 2), 1), (Graph(1), 1)])
def test_fort_number_examples(g, ft):
    res = fort_number(g)
    assert res.value == ft and res.status == OPTIMAL
    assert all(is_fort(g, f) for f in res.packing)


def test_fort_number_matches_oracle():
    for g in N5:
        res = fort_number(g)
        assert res.value == oracle_ft(g)[0]
        seen = set()
        for f in res.packing:
            assert is_fort(g, f) and not seen & f
            seen |= f


# -- parameters

@pytest.mark.parametrize("model,params", [("IM", ("Z", "pt", "th")), ("TSM", ("Z", "pt", "PT", "th")),
                                          ("FC", ("Z",))])
def test_compute_parameter_matches_oracle(model, params):
    for g in N5[::3]:
        for p in params:
            got = compute_parameter(g, p, model)
            want = compute_parameter(g, p, "oracle")
            assert got.value == want.value, (g, p, model)


def test_compute_parameter_rejects():
    with pytest.raises(ValueError):
        compute_parameter(C5, "PT", "IM")
    with pytest.raises(ValueError):
        compute_parameter(C5, "pt", "FC")
    with pytest.raises(ValueError):
        compute_parameter(C5, "Zstar", "TSM")
    with pytest.raises(ValueError):
        compute_parameter(Graph(0), "Z", "TSM")


def test_compute_parameter_single_vertex():
    assert [compute_parameter(Graph(1), p, "TSM").value for p in ("Z", "pt", "PT", "th")] == [1, 0, 0, 1]


# -- minimum rank sums

def test_rank_data():
    p2 = rank_data_small(family("path", 2))
    assert (p2.mr, p2.mr_minus, p2.spread(0), p2.M) == (1, (0, 0), 1, 1)
    with pytest.raises(ValueError):
        RankData(family("path", 2), 3, (0, 0))
    with pytest.raises(ValueError):
        RankData(family("path", 2), 1, (0,))
    assert rank_data_for(family("path", 9)) is None


def test_vertex_sum_formula():
    p2 = rank_data_small(family("path", 2))
    assert mr_vertex_sum([(p2, 1), (p2, 0)]) == 2
    c5 = rank_data_small(C5)
    assert mr_vertex_sum([(c5, 0)]) == c5.mr
    star = family("star", 4)
    s = rank_data_small(star)
    glued = vertex_sum(star, 0, star, 0)
    assert mr_vertex_sum([(s, 0), (s, 0)]) == glued.n - oracle_Z(glued)[0]
    with pytest.raises(ValueError):
        mr_vertex_sum([])


def test_vertex_sum_formula_small_corpus():
    # compare against n - Z on every glued pair of order at most seven
    small = [g for g in read_graph6_file(FIXTURES / "graphs_n4.g6") if g.is_connected()]
    for g in small:
        for h in small[:3]:
            for u in range(g.n):
                glued = vertex_sum(g, u, h, 0)
                assert mr_vertex_sum([(rank_data_small(g), u), (rank_data_small(h), 0)]) == \
                    glued.n - oracle_Z(glued)[0]


def test_edge_sum_formula():
    p2 = rank_data_small(family("path", 2))
    assert mr_edge_sum(p2, p2, 1, 0) == 3
    # synthetic data exercising the spread-2 branch, which drops the +1
    fake = RankData(family("path", 3), 2, (2, 0, 2))
    assert fake.spread(1) == 2
    assert mr_edge_sum(fake, p2, 1, 0) == fake.mr + p2.mr
    small = [g for g in read_graph6_file(FIXTURES / "graphs_n4.g6") if g.is_connected()]
    for g in small:
        for u in range(g.n):
            joined = edge_sum(g, u, family("path", 3), 1)
            assert mr_edge_sum(rank_data_small(g), rank_data_small(family("path", 3)), u, 1) == \
                joined.n - oracle_Z(joined)[0]


def test_rank_table_roundtrip(tmp_path):
    rows = [rank_data_small(C5), rank_data_small(family("star", 5))]
    path = tmp_path / "ranks.txt"
    write_rank_table(path, rows)
    table = read_rank_table(path)
    assert list(table.values()) == rows
    assert rank_data_for(C5, table) == rows[0]
    bad = tmp_path / "bad.txt"
    bad.write_text("Dhc 3 2\n")
    with pytest.raises(ValueError):
        read_rank_table(bad)


# -- bound report

def test_bound_report():
    r = m_lower_bound_report(Graph(1))
    assert (r.ft, r.zstar, r.Z, r.M) == (1, 1, 1, 1) and r.chain_holds
    r = m_lower_bound_report(C5)
    assert (r.ft, r.zstar, r.Z, r.M) == (1, Fraction(5, 3), 2, 2) and r.chain_holds
    r = m_lower_bound_report(random_gnp(9, 0.4, 1))
    assert r.M is None and r.chain_holds
    assert m_lower_bound_report(C5, rank=1).chain_holds is False
    assert BoundReport(None, Fraction(1), 1).chain_holds is None


def test_format_fraction():
    assert format_fraction(Fraction(5, 3)) == "5/3 (1.666667)"
    assert format_fraction(2) == "2"
    assert format_fraction(None) == "NA"
