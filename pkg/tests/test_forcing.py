import itertools

import pytest
from hypothesis import given, settings, strategies as st

from zfip.forcing import (OracleCapExceeded, closure, greedy_zfs, is_fort, is_minimal_fort, is_zfs,
                          largest_fort_within, max_disjoint_packing, minimum_zfs_all, oracle_ft,
                          oracle_minimal_forts, oracle_pt_PT, oracle_th, oracle_Z, propagation_time,
                          shrink_to_minimal_fort, to_mask)
from zfip.graph import Graph, family, random_gnp

from conftest import FIG1_TREE_EDGES

graphs = st.builds(random_gnp, st.integers(1, 8), st.floats(0.1, 0.9), st.integers(0, 10 ** 6))


# naive reference implementations written straight from the definitions

def naive_closure(g, c):
    filled = set(c)
    changed = True
    while changed:
        changed = False
        for u in list(filled):
            white = g.neighbors(u) - filled
            if len(white) == 1:
                filled |= white
                changed = True
    return filled


def naive_is_fort(g, f):
    f = set(f)
    if not f:
        return False
    return all(len(g.neighbors(u) & f) != 1 for u in range(g.n) if u not in f)


def naive_minimal_forts(g):
    forts = [frozenset(s) for k in range(1, g.n + 1) for s in itertools.combinations(range(g.n), k)
             if naive_is_fort(g, s)]
    return {f for f in forts if not any(h < f for h in forts)}


@pytest.mark.parametrize("name,n,z", [("path", 6, 1), ("cycle", 7, 2), ("complete", 5, 4),
                                      ("star", 6, 4), ("hypercube", 3, 4)])
def test_known_zero_forcing_numbers(name, n, z):
    assert oracle_Z(family(name, n))[0] == z


def test_example_tree_game():
    g = Graph(6, FIG1_TREE_EDGES)
    tr = closure(g, {0, 3})
    tr.check(g)
    assert tr.is_complete
    assert tr.steps == (((0, 1), (3, 2)), ((2, 4),), ((4, 5),))
    assert tr.propagation_time == 3
    assert not closure(g, {0}).is_complete
    assert closure(g, {0}).propagation_time is None


def test_trace_check_rejects_tampering():
    g = family("path", 3)
    tr = closure(g, {0})
    bad = type(tr)(tr.initial, (((0, 1), (1, 2)),), (0, 1, 1))
    with pytest.raises(ValueError):
        bad.check(g)


@settings(max_examples=80, deadline=None)
@given(graphs, st.data())
def test_closure_matches_naive(g, data):
    c = data.draw(st.sets(st.integers(0, g.n - 1)))
    tr = closure(g, c)
    tr.check(g)
    assert tr.closure == naive_closure(g, c)
    assert is_zfs(g, c) == (len(naive_closure(g, c)) == g.n)
    # the complement of a closure is empty or a fort
    rest = set(range(g.n)) - tr.closure
    assert not rest or naive_is_fort(g, rest)


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_minimal_forts_match_naive(g):
    forts = oracle_minimal_forts(g)
    forts.check(g)
    assert forts.as_set() == naive_minimal_forts(g)
    for f in forts:
        assert is_minimal_fort(g, f)


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_zfs_hits_every_fort(g):
    z, c = oracle_Z(g)
    assert is_zfs(g, c) and len(c) == z
    assert all(f & c for f in oracle_minimal_forts(g))
    # hitting every minimal fort is also sufficient
    for k in range(z):
        for s in itertools.combinations(range(g.n), k):
            assert not all(f & set(s) for f in oracle_minimal_forts(g))


@settings(max_examples=60, deadline=None)
@given(graphs, st.data())
def test_largest_fort_within(g, data):
    s = data.draw(st.sets(st.integers(0, g.n - 1)))
    inner = largest_fort_within(g, s)
    assert inner <= s
    assert not inner or is_fort(g, inner)
    for f in naive_minimal_forts(g):
        if f <= s:
            assert f <= inner


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_shrink_gives_minimal_fort(g):
    whole = frozenset(range(g.n))
    m = shrink_to_minimal_fort(g, whole)
    assert m in naive_minimal_forts(g)


def test_shrink_rejects_non_fort():
    with pytest.raises(ValueError):
        shrink_to_minimal_fort(family("path", 3), {1})


def test_path_forts():
    assert oracle_minimal_forts(family("path", 2)).as_set() == {frozenset({0, 1})}
    assert oracle_minimal_forts(family("path", 5)).as_set() == {frozenset({0, 2, 4}), frozenset({0, 1, 3, 4})}


def test_propagation_times():
    p4 = family("path", 4)
    assert propagation_time(p4, {0}) == 3
    assert propagation_time(p4, {1}) is None
    assert oracle_pt_PT(p4) == (3, 3, (3,))
    c5 = family("cycle", 5)
    # only adjacent pairs force the cycle, each in two steps
    assert oracle_pt_PT(c5) == (2, 2, (2,))
    assert len(minimum_zfs_all(c5)) == 5


def test_throttling():
    for n in range(1, 9):
        g = family("path", n)
        best = min(k + propagation_time(g, s) for k in range(1, n + 1)
                   for s in itertools.combinations(range(n), k) if is_zfs(g, s))
        assert oracle_th(g)[0] == best


def test_fort_number_small():
    assert oracle_ft(family("star", 5))[0] == 2
    assert oracle_ft(family("path", 2))[0] == 1
    assert oracle_ft(family("complete", 4))[0] == 2


def test_packing():
    sets = [to_mask(s) for s in ({0, 1}, {1, 2}, {2, 3}, {3, 0}, {4})]
    assert len(max_disjoint_packing(sets)) == 3
    assert max_disjoint_packing([]) == []


def test_greedy_zfs_is_minimal():
    g = family("hypercube", 3)
    c = greedy_zfs(g)
    assert is_zfs(g, c)
    assert all(not is_zfs(g, c - {v}) for v in c)


def test_oracle_cap():
    with pytest.raises(OracleCapExceeded):
        oracle_Z(family("path", 20), cap=10)
    with pytest.raises(ValueError):
        oracle_Z(Graph(0))
