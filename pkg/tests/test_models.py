from fractions import Fraction

import pytest

from zfip.forcing import (FortCollection, closure, is_fort, oracle_minimal_forts, oracle_pt_PT, oracle_th,
                          oracle_Z, propagation_time)
from zfip.graph import Graph, family, read_graph6_file
from zfip.milp import INFEASIBLE, OPTIMAL, ModelError, solve_ip, solve_lp
from zfip.models import (ExtractionError, build_fort_cover, build_fort_number, build_frac_min_fort, build_im,
                         build_min_fort, build_minimal_fort_excl, build_tsm, build_tsm_pti, extract_cover,
                         extract_fort, extract_packing, extract_trace, extract_zfs, fn_assignment, graph_id,
                         im_assignment, im_to_tsm, tsm_assignment, tsm_to_im, vertex_assignment)

from conftest import FIG1_TREE_EDGES, FIXTURES

C5 = family("cycle", 5)
C5_FORTS = oracle_minimal_forts(C5)
FIG1 = Graph(6, FIG1_TREE_EDGES)


def fig1_im_assignment(model):
    # s = {1, 4}, fill times (0, 1, 2, 0, 3, 5), forces 1->2, 2->3, 3->5, 5->6 (one-based), z = 5
    values = {"s_0": 1, "s_3": 1, "z": 5, "y_0_1": 1, "y_1_2": 1, "y_2_4": 1, "y_4_5": 1}
    values.update({f"x_{v}": t for v, t in enumerate((0, 1, 2, 0, 3, 5))})
    return model.assignment_from_names(values)


# -- IM

def test_im_shape():
    g = FIG1
    m = build_im(g, 5)
    arcs = len(g.arcs())
    assert m.num_vars == 2 * g.n + arcs + 1
    names = [c.name for c in m.constraints]
    assert sum(n.startswith("one_") for n in names) == g.n
    assert sum(n.startswith("time_") for n in names) == arcs
    assert sum(n.startswith("nbr_") for n in names) == sum(g.degree(u) - 1 for u, _ in g.arcs())
    assert sum(n.startswith("zb_") for n in names) == g.n
    row = m.constraint("time_0_1")
    assert dict(row.coeffs)[m.var("y_0_1")] == 6 and row.rhs == 5


def test_im_example_assignment_feasible():
    m = build_im(FIG1, 5)
    assert m.violations(fig1_im_assignment(m)) == []
    trace = extract_trace(fig1_im_assignment(m), m)
    # the game idles at step 4, which the extracted trace squeezes out
    assert trace.propagation_time == 4


def test_im_solves():
    sol = solve_ip(build_im(C5, 4, "Z"))
    assert sol.objective_value == 2
    assert len(extract_zfs(sol, build_im(C5, 4, "Z"))) == 2
    p4 = family("path", 4)
    m = build_im(p4, 3, "pt")
    sol = solve_ip(m)
    assert sol.objective_value == 1 + Fraction(3, 6)
    assert extract_trace(sol, m).propagation_time == 3


def test_im_rejects():
    with pytest.raises(ModelError):
        build_im(C5, 4, "PT")
    with pytest.raises(ModelError):
        build_im(C5, 0)
    with pytest.raises(ModelError):
        build_im(Graph(0))


# -- TSM

def test_tsm_shape():
    g, T = FIG1, 5
    m = build_tsm(g, T)
    arcs = len(g.arcs())
    assert m.num_vars == g.n * (T + 1) + arcs * T + T
    prefixes = ("one_", "pre_", "pren_", "fill_", "all_", "act_", "step_")
    for p in prefixes:
        assert any(c.name.startswith(p) for c in m.constraints)
    row = m.constraint("all_3_2_1")
    assert row.rhs == g.degree(3) - 1
    act = dict(m.constraint("act_1").coeffs)
    assert act[m.var("x_0_1")] == Fraction(1, 6) and act[m.var("z_1")] == -1


def test_example_translation_breaks_tsm():
    im = build_im(FIG1, 5)
    tsm = build_tsm(FIG1, 5)
    x = im_to_tsm(im, fig1_im_assignment(im), tsm)
    bad = tsm.violations(x)
    # leaf 4 (index 3) is gray at t=0 while its only white neighbour is never forced at t=1
    assert any(v.startswith("all_3_2_1") for v in bad)


def test_tsm_example_pt_PT():
    m = build_tsm(FIG1, 5, "PT")
    sol = solve_ip(m)
    trace = extract_trace(sol, m)
    assert len(trace.initial) == 2 and trace.propagation_time == 3


def test_tsm_q3_PT():
    m = build_tsm(family("hypercube", 3), 7, "PT")
    sol = solve_ip(m)
    tv = m.meta["vars"]
    assert sum(sol.assignment[tv.x[v, 0]] for v in range(8)) == 4
    assert sum(sol.assignment[tv.z[t]] for t in tv.z) == 2
    assert sol.objective_value == 4 - Fraction(2, 14)


def test_tsm_k3_pt():
    m = build_tsm(family("complete", 3), 2, "pt")
    sol = solve_ip(m)
    assert sol.objective_value == 2 + Fraction(1, 4)
    assert extract_trace(sol, m).propagation_time == 1


def test_pti_rows():
    q3 = family("hypercube", 3)
    m = build_tsm_pti(q3, 4, 2)
    sol = solve_ip(m)
    tv = m.meta["vars"]
    assert sum(sol.assignment[tv.z[t]] for t in tv.z) == 2
    assert solve_ip(build_tsm_pti(q3, 4, 3)).status == INFEASIBLE
    base = build_tsm(C5, 4, "pt")
    assert solve_ip(build_tsm_pti(C5, 4, 0)).objective_value == solve_ip(base).objective_value
    with pytest.raises(ModelError):
        build_tsm_pti(C5, 4, 5)
    with pytest.raises(ModelError):
        build_tsm_pti(C5, 4, -1)


def test_tsm_assignments_are_im_feasible():
    # time-indexed games translate into IM solutions
    for g in read_graph6_file(FIXTURES / "graphs_n5.g6"):
        T = 4
        tsm, im = build_tsm(g, T, "PT"), build_im(g, T, "Z")
        sol = solve_ip(tsm)
        assert im.violations(tsm_to_im(tsm, sol, im)) == []


def test_known_assignments():
    g = family("path", 4)
    tsm = build_tsm(g, 3, "pt")
    assert tsm.violations(tsm_assignment(tsm, {0})) == []
    with pytest.raises(ModelError):
        tsm_assignment(tsm, {1})
    im = build_im(g, 3, "pt")
    assert im.violations(im_assignment(im, closure(g, {3}))) == []


# -- fort cover

def test_fort_cover():
    assert solve_ip(build_fort_cover(C5, C5_FORTS)).objective_value == 2
    assert solve_lp(build_fort_cover(C5, C5_FORTS, relaxed=True)).objective_value == Fraction(5, 3)
    partial = build_fort_cover(C5, C5_FORTS.forts[:4], relaxed=True)
    s = [Fraction(1, 2)] * 3 + [Fraction(0)] * 2
    assert partial.violations(s) == []
    full = build_fort_cover(C5, C5_FORTS, relaxed=True)
    assert full.violations(s) == ["cover_4"]
    with pytest.raises(ModelError):
        build_fort_cover(C5, [{0, 1}])


def test_extract_cover_and_zfs():
    m = build_fort_cover(C5, C5_FORTS.forts[:1])
    sol = solve_ip(m)
    c = extract_cover(sol, m)
    assert c & C5_FORTS.forts[0]
    with pytest.raises(ExtractionError):
        extract_zfs(sol, m)


# -- fort models

def test_min_fort():
    sol = solve_ip(build_min_fort(C5, set()))
    assert sol.objective_value == 3
    assert extract_fort(sol, build_min_fort(C5, set())) in C5_FORTS.as_set()
    assert solve_ip(build_min_fort(C5, {0, 1})).status == INFEASIBLE
    star = family("star", 5)
    m = build_min_fort(star, {0})
    sol = solve_ip(m)
    assert sol.objective_value == 2 and 0 not in extract_fort(sol, m)
    # fixing the closure gives the same optimum
    p = family("path", 5)
    for c in ({1}, {2}, {1, 3}):
        a = solve_ip(build_min_fort(p, c))
        b = solve_ip(build_min_fort(p, c, closure_fix=True))
        assert a.objective_value == b.objective_value


def test_frac_min_fort():
    s = [Fraction(1, 2)] * 3 + [Fraction(0)] * 2
    m = build_frac_min_fort(C5, s)
    sol = solve_ip(m)
    assert sol.objective_value == Fraction(1, 2)
    assert extract_fort(sol, m) == frozenset({1, 3, 4})
    assert solve_ip(build_frac_min_fort(C5, [Fraction(1, 3)] * 5)).objective_value == 1
    assert solve_ip(build_frac_min_fort(FIG1, [1] * 6)).objective_value == min(map(len, oracle_minimal_forts(FIG1)))
    with pytest.raises(ModelError):
        build_frac_min_fort(C5, [2, 0, 0, 0, 0])
    with pytest.raises(ModelError):
        build_frac_min_fort(C5, [0, 0])


def test_minimal_fort_excl():
    assert solve_ip(build_minimal_fort_excl(C5, [])).objective_value == 3
    for k in range(5):
        rest = [f for i, f in enumerate(C5_FORTS) if i != k]
        m = build_minimal_fort_excl(C5, rest)
        assert extract_fort(solve_ip(m), m) == C5_FORTS.forts[k]
    assert solve_ip(build_minimal_fort_excl(C5, C5_FORTS)).status == INFEASIBLE


def test_extract_fort_rejects_non_fort():
    m = build_min_fort(C5, set())
    with pytest.raises(ExtractionError):
        extract_fort(vertex_assignment(m, {0, 1}), m)


# -- fort number

@pytest.mark.parametrize("g,ft", [(C5, 1), (family("star", 5), 2), (Graph(1), 1), (family("path", 2), 1)])
def test_fort_number_model(g, ft):
    for sym in (False, True):
        m = build_fort_number(g, symmetry_breaking=sym)
        assert m.num_vars == g.n * g.n + g.n and m.sense == "max"
        sol = solve_ip(m)
        assert sol.objective_value == ft
        packing = extract_packing(sol, m)
        assert len(packing) == ft
        assert all(is_fort(g, f) for f in packing)


def test_extract_packing_rejects_overlap():
    m = build_fort_number(C5)
    bad = fn_assignment(m, [{0, 1, 3}, {0, 2, 3}])
    with pytest.raises(ExtractionError):
        extract_packing(bad, m)


# -- agreement with the oracle on a small corpus

@pytest.mark.parametrize("g", read_graph6_file(FIXTURES / "graphs_n4.g6"), ids=lambda g: graph_id(g))
def test_corpus_n4(g):
    T = max(g.n - 1, 1)
    z = oracle_Z(g)[0]
    pt, PT, _ = oracle_pt_PT(g)
    th = oracle_th(g)[0]
    assert solve_ip(build_im(g, T, "Z")).objective_value == z
    assert solve_ip(build_tsm(g, T, "Z")).objective_value == z
    assert solve_ip(build_im(g, T, "pt")).objective_value == z + Fraction(pt, 2 * T)
    assert solve_ip(build_tsm(g, T, "pt")).objective_value == z + Fraction(pt, 2 * T)
    assert solve_ip(build_tsm(g, T, "PT")).objective_value == z - Fraction(PT, 2 * T)
    assert solve_ip(build_im(g, T, "th")).objective_value == th
    assert solve_ip(build_tsm(g, T, "th")).objective_value == th
    assert solve_ip(build_fort_cover(g, oracle_minimal_forts(g))).objective_value == z
