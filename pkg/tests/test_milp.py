import itertools
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from scipy.optimize import linprog

from zfip.milp import (BUDGET_EXCEEDED, EQ, GE, INFEASIBLE, LE, OPTIMAL, UNBOUNDED, LinearModel, ModelError,
                       export_lp_format, export_mps, lagrangian_bound, parse_mps, solve_external, solve_ip,
                       solve_lp, verify_lp_certificate)
from zfip.milp.floatlp import FloatLP
from zfip.milp.lu import SingularMatrix, SparseLU
from zfip.milp.propagate import Propagator

from conftest import FIXTURES

HIGHS_CMD = f"{sys.executable} {Path(__file__).resolve().parent.parent / 'scripts' / 'highs_solve.py'} {{mps}} {{sol}}"


def same_model(a: LinearModel, b: LinearModel) -> bool:
    return (a.name == b.name and a.variables == b.variables and a.constraints == b.constraints
            and a.objective == b.objective and a.sense == b.sense)


@st.composite
def small_models(draw, integer=True):
    n = draw(st.integers(1, 4))
    m = LinearModel("rand")
    for j in range(n):
        m.add_var(f"x{j}", 0, draw(st.integers(0, 3)), integer=integer)
    for i in range(draw(st.integers(1, 4))):
        coeffs = {j: draw(st.integers(-3, 3)) for j in range(n)}
        m.add_constraint(coeffs, draw(st.sampled_from([LE, GE, EQ])), draw(st.integers(-3, 6)))
    obj = {j: Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3))) for j in range(n)}
    m.set_objective(obj, draw(st.sampled_from(["min", "max"])))
    return m


def brute_force(model):
    best = None
    ranges = [range(int(v.lb), int(v.ub) + 1) for v in model.variables]
    for x in itertools.product(*ranges):
        x = [Fraction(v) for v in x]
        if model.is_feasible(x):
            val = model.objective_value(x)
            if best is None or (val < best if model.sense == "min" else val > best):
                best = val
    return best


# -- model

def test_model_validation():
    m = LinearModel()
    x = m.add_binary("x")
    with pytest.raises(ModelError):
        m.add_var("x")
    with pytest.raises(ModelError):
        m.add_var("y", 2, 1)
    with pytest.raises(ModelError):
        m.add_constraint({x + 1: 1}, LE, 1)
    with pytest.raises(ModelError):
        m.add_constraint({x: 1}, "<", 1)
    with pytest.raises(ModelError):
        m.set_objective({x: 1}, "minimize")
    m.add_constraint({x: 1}, GE, 1, name="r")
    with pytest.raises(ModelError):
        m.add_constraint({x: 1}, GE, 1, name="r")


def test_model_helpers():
    m = LinearModel()
    x, y = m.add_binary("x"), m.add_var("y", 0, 5)
    m.add_constraint([(x, 1), (y, 1), (x, 1)], LE, 3, name="cap")
    assert m.constraint("cap").coeffs == ((x, 2), (y, 1))
    m.set_objective({x: Fraction(1, 2), y: Fraction(1, 4)})
    # y is continuous, so no granularity
    assert m.objective_granularity() is None
    m.set_objective({x: Fraction(1, 2)})
    assert m.objective_granularity() == Fraction(1, 2)
    assert m.violations([Fraction(1), Fraction(2)])
    assert m.is_feasible([Fraction(1), Fraction(1)])
    assert m.integer_indices() == [x]
    r = m.relaxed()
    assert not any(v.integer for v in r.variables)
    c = m.copy("other")
    c.add_constraint({x: 1}, EQ, 0, name="extra")
    assert not m.has_constraint("extra") and c.has_constraint("extra")


# -- LU

@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10 ** 6))
def test_sparse_lu_solves_exactly(k, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(-3, 4, size=(k, k))
    a[rng.random((k, k)) < 0.4] = 0
    cols = [{i: Fraction(int(a[i, j])) for i in range(k) if a[i, j]} for j in range(k)]
    b = [Fraction(int(v)) for v in rng.integers(-5, 6, size=k)]
    if round(np.linalg.det(a)) == 0:
        with pytest.raises(SingularMatrix):
            SparseLU(cols, k)
        return
    lu = SparseLU(cols, k)
    x = lu.solve(b)
    assert all(sum(int(a[i, j]) * x[j] for j in range(k)) == b[i] for i in range(k))
    y = lu.solve_transpose(b)
    assert all(sum(int(a[i, j]) * y[i] for i in range(k)) == b[j] for j in range(k))


# -- LP

def c5_cover(relaxed):
    from zfip.forcing import oracle_minimal_forts
    from zfip.graph import family
    from zfip.models import build_fort_cover
    g = family("cycle", 5)
    return build_fort_cover(g, oracle_minimal_forts(g), relaxed=relaxed)


def test_lp_examples():
    sol = solve_lp(c5_cover(True))
    assert sol.status == OPTIMAL and sol.objective_value == Fraction(5, 3)
    assert verify_lp_certificate(c5_cover(True), sol)

    m = LinearModel()
    xs = [m.add_var(f"s{i}", 0, 1) for i in range(4)]
    m.set_objective({j: 1 for j in xs})
    assert solve_lp(m).objective_value == 0

    m = LinearModel()
    s = m.add_var("s", 0, 1)
    m.add_constraint({s: 1}, GE, 1)
    m.add_constraint({s: 1}, LE, 0)
    for method in ("auto", "exact"):
        assert solve_lp(m, method=method).status == INFEASIBLE

    m = LinearModel()
    x = m.add_var("x", 0, None)
    m.set_objective({x: 1}, "max")
    assert solve_lp(m).status == UNBOUNDED


@settings(max_examples=80, deadline=None)
@given(small_models(integer=False))
def test_lp_matches_scipy(model):
    sol = solve_lp(model)
    exact = solve_lp(model, method="exact")
    sign = 1 if model.sense == "min" else -1
    c = np.zeros(model.num_vars)
    for j, a in model.objective.items():
        c[j] = sign * float(a)
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for con in model.constraints:
        row = np.zeros(model.num_vars)
        for j, a in con.coeffs:
            row[j] = float(a)
        if con.sense == LE:
            a_ub.append(row); b_ub.append(float(con.rhs))
        elif con.sense == GE:
            a_ub.append(-row); b_ub.append(-float(con.rhs))
        else:
            a_eq.append(row); b_eq.append(float(con.rhs))
    ref = linprog(c, A_ub=a_ub or None, b_ub=b_ub or None, A_eq=a_eq or None, b_eq=b_eq or None,
                  bounds=[(float(v.lb), float(v.ub)) for v in model.variables], method="highs")
    if ref.status == 2:
        assert sol.status == INFEASIBLE and exact.status == INFEASIBLE
        return
    assert ref.status == 0
    assert sol.status == OPTIMAL and exact.status == OPTIMAL
    assert sol.objective_value == exact.objective_value
    assert abs(float(sol.objective_value) - sign * ref.fun) < 1e-7
    assert verify_lp_certificate(model, sol)
    assert lagrangian_bound(model, sol.duals) == sol.objective_value


# -- IP

def test_ip_examples():
    sol = solve_ip(c5_cover(False))
    assert sol.status == OPTIMAL and sol.objective_value == 2
    assert sol.stats.nodes >= 1

    m = LinearModel()
    x, y = m.add_binary("x"), m.add_binary("y")
    m.add_constraint({x: 1, y: 1}, GE, 1)
    m.set_objective({x: 1, y: 2})
    sol = solve_ip(m)
    assert sol.objective_value == 1 and sol.stats.branch_nodes == 0
    assert sol.signature() == solve_ip(m).signature()


def test_ip_rejects_unbounded_integers():
    m = LinearModel()
    m.add_var("x", 0, None, integer=True)
    with pytest.raises(ModelError):
        solve_ip(m)


def test_ip_node_limit_keeps_incumbent():
    from zfip.graph import family
    from zfip.models import build_tsm
    model = build_tsm(family("hypercube", 3), 4, "Z")
    sol = solve_ip(model, node_limit=1)
    assert sol.status in (OPTIMAL, BUDGET_EXCEEDED)
    if sol.status == BUDGET_EXCEEDED and sol.assignment is not None:
        assert model.is_feasible(sol.assignment)


@settings(max_examples=150, deadline=None)
@given(small_models())
def test_ip_matches_brute_force(model):
    sol = solve_ip(model)
    best = brute_force(model)
    if best is None:
        assert sol.status == INFEASIBLE
    else:
        assert sol.status == OPTIMAL
        assert sol.objective_value == best
        assert model.is_feasible(sol.assignment)
        assert all(sol.assignment[j].denominator == 1 for j in model.integer_indices())
        lp = solve_lp(model)
        assert lp.status == OPTIMAL
        if model.sense == "min":
            assert lp.objective_value <= best
        else:
            assert lp.objective_value >= best
    assert sol.signature() == solve_ip(model).signature()


@settings(max_examples=150, deadline=None)
@given(small_models())
def test_propagation_never_cuts_integer_points(model):
    fl = FloatLP(model)
    prop = Propagator(fl)
    assume(prop.ok)
    lo = np.array([int(v.lb) for v in model.variables], dtype=np.int64)
    up = np.array([int(v.ub) for v in model.variables], dtype=np.int64)
    out = prop(lo, up)
    ranges = [range(int(v.lb), int(v.ub) + 1) for v in model.variables]
    feasible = [x for x in itertools.product(*ranges) if model.is_feasible([Fraction(v) for v in x])]
    if out is None:
        assert not feasible
        return
    new_lo, new_up = out
    for x in feasible:
        assert all(new_lo[j] <= x[j] <= new_up[j] for j in range(model.num_vars))


def test_warm_incumbent_is_used():
    model = c5_cover(False)
    start = model.assignment_from_names({"s_0": 1, "s_1": 1})
    assert model.is_feasible(start)
    sol = solve_ip(model, incumbent=start)
    assert sol.objective_value == 2


# -- formats

def test_mps_golden_files():
    m = LinearModel("onevar")
    x = m.add_binary("x")
    m.set_objective({x: 1})
    assert export_mps(m) == (FIXTURES / "onevar.mps").read_text()
    assert export_mps(c5_cover(False)) == (FIXTURES / "c5_fc.mps").read_text()


@settings(max_examples=60, deadline=None)
@given(small_models())
def test_mps_roundtrip_random(model):
    assert same_model(parse_mps(export_mps(model)), model)


def test_mps_roundtrip_models():
    from zfip.graph import family
    from zfip.models import build_fort_number, build_im, build_tsm
    g = family("cycle", 5)
    for model in (build_im(g, 4, "pt"), build_tsm(g, 4, "PT"), build_fort_number(g), c5_cover(True)):
        assert same_model(parse_mps(export_mps(model)), model)


def test_long_names_are_mangled_stably():
    m = LinearModel("long")
    a = m.add_binary("a_very_long_variable_name_1")
    b = m.add_binary("a_very_long_variable_name_2")
    m.add_constraint({a: Fraction(1, 3), b: 1}, GE, Fraction(2, 7), name="a_rather_long_constraint_name")
    m.set_objective({a: 1, b: 1})
    text = export_mps(m)
    assert text == export_mps(m)
    assert same_model(parse_mps(text), m)


def test_lp_format_contents():
    text = export_lp_format(c5_cover(False))
    assert text.startswith("\\")
    assert "Minimize" in text and "Subject To" in text and "End" in text
    assert text.count("cover_") == 5


def test_external_solver_agrees():
    sol = solve_external(c5_cover(False), HIGHS_CMD, timeout=60)
    assert sol.status == OPTIMAL and sol.objective_value == 2
    from zfip.graph import family
    from zfip.models import build_tsm
    model = build_tsm(family("hypercube", 3), 7, "PT")
    ext = solve_external(model, HIGHS_CMD, timeout=120)
    assert ext.objective_value == solve_ip(model).objective_value
