"""Iterative procedures built on the integer programs.

Cut generation for the fort cover model (integral and fractional),
the realized propagation time interval loop, enumeration of all minimal
forts, the fort number, and minimum-rank formulas for vertex and edge sums.

Every driver takes a wall-clock budget for the whole run plus an optional
per-solve node limit.  Running out of budget never yields a silently wrong
answer: the result carries ``status == "budget_exceeded"`` and only the
bounds that are actually proven.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple

from . import forcing
from .forcing import FortCollection
from .graph import Graph, encode_graph6, parse_graph6
from .milp import (BUDGET_EXCEEDED, EQ, GE, INFEASIBLE, OPTIMAL, LE, Solution, solve_ip, solve_lp)
from .milp.solve import DEFAULT_TIME_LIMIT
from . import models as zm

PARAMS = ("Z", "pt", "PT", "th")
MODELS = ("IM", "TSM", "FC", "oracle")


class BudgetExceeded(RuntimeError):
    pass


class _Budget:
    """Wall-clock budget shared by all solves in one driver run."""

    def __init__(self, time_limit, node_limit):
        self.deadline = None if time_limit is None else time.perf_counter() + time_limit
        self.node_limit = node_limit

    def remaining(self):
        if self.deadline is None:
            return None
        return max(self.deadline - time.perf_counter(), 0.0)

    def solve(self, model, incumbent=None) -> Solution:
        return solve_ip(model, time_limit=self.remaining(), node_limit=self.node_limit,
                        incumbent=incumbent)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (set, frozenset)):
        return sorted(v)
    return v


class _Log:
    def __init__(self, target):
        self.fh = None
        self.own = False
        if isinstance(target, (str, Path)):
            self.fh = open(target, "a")
            self.own = True
        elif target is not None:
            self.fh = target

    def write(self, **rec):
        if self.fh is not None:
            self.fh.write(json.dumps({k: _jsonable(v) for k, v in rec.items()}) + "\n")

    def close(self):
        if self.own:
            self.fh.close()


# ---------------------------------------------------------------- cut loops

@dataclass
class CutLoopState:
    forts: list = field(default_factory=list)
    solution: list | None = None  # latest relaxed-model values per vertex
    iterations: int = 0
    log: list = field(default_factory=list)
    status: str = OPTIMAL
    bound: Fraction | None = None
    certificate: Fraction | None = None  # final separation optimum (fractional loop)

    def add(self, fort: frozenset, objective) -> None:
        if fort in self.forts:
            raise RuntimeError(f"separation returned fort {sorted(fort)} twice")
        self.forts.append(fort)
        self.iterations += 1
        self.log.append({"iteration": self.iterations, "objective": objective, "cut": sorted(fort)})


class CutResult(NamedTuple):
    value: object
    witness: object
    state: CutLoopState


def _indicator(g: Graph, s) -> list:
    return [1 if v in s else 0 for v in range(g.n)]


def zf_via_cut_generation(g: Graph, time_limit=DEFAULT_TIME_LIMIT, node_limit=None,
                          closure_fix: bool = False, add_all: bool = False, max_cuts_per_round: int = 16,
                          log=None) -> CutResult:
    """Zero forcing number by fort cover constraint generation.

    Starts from the cover model with no rows; each round solves it, and if
    the optimal cover ``C`` is not a zero forcing set adds a minimum fort
    disjoint from ``C``.  With ``add_all`` every minimum fort of the round
    (up to ``max_cuts_per_round``) is added instead of one.
    """
    _nonempty(g)
    state = CutLoopState()
    if g.n == 1:
        state.add(frozenset({0}), 0)
        state.solution = [1]
        state.bound = Fraction(1)
        return CutResult(1, frozenset({0}), state)
    budget = _Budget(time_limit, node_limit)
    out = _Log(log)
    prev = frozenset()
    try:
        while True:
            fc = zm.build_fort_cover(g, state.forts)
            inc = None
            if state.forts:
                extra = {min(f) for f in state.forts if not f & prev}
                inc = zm.vertex_assignment(fc, prev | extra)
            sol = budget.solve(fc, inc)
            if sol.status == BUDGET_EXCEEDED or not sol.is_optimal:
                state.status = BUDGET_EXCEEDED
                return CutResult(None, None, state)
            c = zm.extract_cover(sol, fc)
            state.bound = sol.objective_value
            state.solution = _indicator(g, c)
            prev = c
            if forcing.is_zfs(g, c):
                out.write(event="done", iteration=state.iterations, objective=sol.objective_value, zfs=c)
                return CutResult(int(sol.objective_value), c, state)
            for f in _min_forts_avoiding(g, c, budget, closure_fix, max_cuts_per_round if add_all else 1):
                state.add(f, sol.objective_value)
                out.write(event="cut", iteration=state.iterations, objective=sol.objective_value, cut=f)
    except BudgetExceeded:
        state.status = BUDGET_EXCEEDED
        return CutResult(None, None, state)
    finally:
        out.close()


def _min_forts_avoiding(g, c, budget, closure_fix, limit):
    mf = zm.build_min_fort(g, c, closure_fix=closure_fix)
    # the unfilled part of a stalled game is a fort avoiding c
    inc = zm.vertex_assignment(mf, frozenset(range(g.n)) - forcing.closure(g, c).closure)
    found = []
    size = None
    while len(found) < limit:
        sol = budget.solve(mf, inc)
        if sol.status == BUDGET_EXCEEDED:
            if found:
                break
            raise BudgetExceeded()
        if sol.status != OPTIMAL:
            if found:
                break
            raise RuntimeError(f"no fort avoids a non-forcing set: {sol.status}")
        f = zm.extract_fort(sol, mf)
        if size is not None and len(f) > size:
            break
        size = len(f)
        found.append(f)
        mf.add_constraint({mf.meta["vars"].v[v]: 1 for v in sorted(f)}, LE, len(f) - 1, f"excl_{len(found)}")
        inc = None
    return found


def fractional_zf(g: Graph, time_limit=DEFAULT_TIME_LIMIT, node_limit=None, log=None) -> CutResult:
    """Fractional zero forcing number by LP constraint generation.

    Separation solves the minimum-weight fort program with the current LP
    weights; the loop ends once that optimum is at least one, which
    certifies the weights cover every fort.
    """
    _nonempty(g)
    state = CutLoopState()
    if g.n == 1:
        state.add(frozenset({0}), Fraction(0))
        state.solution = [Fraction(1)]
        state.bound = state.certificate = Fraction(1)
        return CutResult(Fraction(1), [Fraction(1)], state)
    budget = _Budget(time_limit, node_limit)
    out = _Log(log)
    try:
        while True:
            lfc = zm.build_fort_cover(g, state.forts, relaxed=True)
            lp = solve_lp(lfc)
            if lp.status != OPTIMAL:
                raise RuntimeError(f"fort cover relaxation returned {lp.status}")
            s = [lp.assignment[j] for j in range(g.n)]
            state.solution = s
            state.bound = lp.objective_value
            lmf = zm.build_frac_min_fort(g, s)
            sep = budget.solve(lmf)
            if sep.status == BUDGET_EXCEEDED:
                state.status = BUDGET_EXCEEDED
                return CutResult(None, s, state)
            if sep.status != OPTIMAL:
                raise RuntimeError(f"fort separation returned {sep.status}")
            if sep.objective_value >= 1:
                state.certificate = sep.objective_value
                out.write(event="done", iteration=state.iterations, objective=lp.objective_value,
                          separation=sep.objective_value)
                return CutResult(lp.objective_value, s, state)
            # a minimal fort inside the separated one is violated at least as badly
            f = forcing.shrink_to_minimal_fort(g, zm.extract_fort(sep, lmf))
            if sum(s[v] for v in f) >= 1:
                raise RuntimeError("shrunken fort is not violated")
            state.add(f, lp.objective_value)
            out.write(event="cut", iteration=state.iterations, objective=lp.objective_value,
                      separation=sep.objective_value, cut=f)
    finally:
        out.close()


# ---------------------------------------------------------------- parameters

@dataclass
class ParamResult:
    param: str
    model: str
    value: object
    witness: frozenset | None
    status: str = OPTIMAL
    wall_time: float = 0.0
    nodes: int = 0


def _nonempty(g):
    if g.n == 0:
        raise ValueError("graph has no vertices")


_CLOSED_FORM = {"Z": 1, "pt": 0, "PT": 0, "th": 1}


def compute_parameter(g: Graph, param: str, model: str = "TSM", T=None,
                      time_limit=DEFAULT_TIME_LIMIT, node_limit=None) -> ParamResult:
    """Z, pt, PT or th of ``g`` from one model, with the witness validated."""
    if param not in PARAMS:
        raise ValueError(f"unknown parameter {param!r}")
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    if (param, model) in (("PT", "IM"),) or (model == "FC" and param != "Z"):
        raise ValueError(f"model {model} cannot compute {param}")
    _nonempty(g)
    t0 = time.perf_counter()
    if g.n == 1:
        return ParamResult(param, model, _CLOSED_FORM[param], frozenset({0}))
    if model == "oracle":
        value, wit = _oracle_param(g, param)
        return ParamResult(param, model, value, wit, wall_time=time.perf_counter() - t0)
    if model == "FC":
        res = zf_via_cut_generation(g, time_limit, node_limit)
        return ParamResult(param, model, res.value, res.witness, res.state.status,
                           time.perf_counter() - t0, res.state.iterations)
    variant = "Z" if param == "Z" else param
    build = zm.build_im if model == "IM" else zm.build_tsm
    m = build(g, T, variant)
    Tm = m.meta["T"]
    inc = None
    greedy = forcing.greedy_zfs(g)
    tr = forcing.closure(g, greedy)
    if tr.propagation_time <= Tm:
        inc = zm.im_assignment(m, tr) if model == "IM" else zm.tsm_assignment(m, greedy)
    sol = solve_ip(m, time_limit=time_limit, node_limit=node_limit, incumbent=inc)
    wall = time.perf_counter() - t0
    if not sol.is_optimal:
        return ParamResult(param, model, None, None, sol.status, wall, sol.stats.nodes)
    c = zm.extract_zfs(sol, m)
    obj = sol.objective_value
    k = len(c)
    if param == "Z":
        value = obj
    elif param == "pt":
        value = (obj - k) * 2 * Tm
    elif param == "PT":
        value = (k - obj) * 2 * Tm
    else:
        value = obj
    value = _as_int(value)
    _check_witness(g, param, value, c, sol, m)
    return ParamResult(param, model, value, c, OPTIMAL, wall, sol.stats.nodes)


def _as_int(v):
    v = Fraction(v)
    if v.denominator != 1:
        raise zm.ExtractionError(f"non-integral parameter value {v}")
    return int(v)


def _check_witness(g, param, value, c, sol, m):
    trace = zm.extract_trace(sol, m)
    if trace.initial != c:
        raise zm.ExtractionError("trace and zero forcing set disagree")
    sync = forcing.propagation_time(g, c)
    if param == "Z" and value != len(c):
        raise zm.ExtractionError("objective differs from witness size")
    if param in ("pt", "PT") and sync != value:
        raise zm.ExtractionError(f"witness propagation time {sync} differs from objective value {value}")
    if param == "th" and len(c) + sync != value:
        raise zm.ExtractionError("witness throttling value differs from objective")


def _oracle_param(g, param):
    if param == "Z":
        z, c = forcing.oracle_Z(g)
        return z, c
    if param in ("pt", "PT"):
        pt, PT, _ = forcing.oracle_pt_PT(g)
        return (pt if param == "pt" else PT), None
    th, c = forcing.oracle_th(g)
    return th, c


# ---------------------------------------------------------------- PTI

@dataclass
class PtiResult:
    times: tuple
    Z: int | None
    T: int
    status: str = OPTIMAL
    solves: int = 0
    stopped_by_guard: bool = False

    @property
    def pt(self):
        return min(self.times) if self.times else None

    @property
    def PT(self):
        return max(self.times) if self.times else None


def realized_pti(g: Graph, T=None, fix_size: bool = True, guard: bool = True,
                 time_limit=DEFAULT_TIME_LIMIT, node_limit=None, log=None) -> PtiResult:
    """Realized propagation times of minimum zero forcing sets.

    Solves the time-step model with ``sum_t z[t] >= k`` for growing ``k``,
    recording each optimal ``sum_t z[t]`` and jumping ``k`` past it.

    With ``fix_size`` the zero forcing number is first proven by cut
    generation and every model gets the row ``sum_v x[v,0] = Z``; the
    relaxation is far too weak to bound the set size on its own.  Without
    it, ``guard`` stops the loop once the optimum needs more than ``Z``
    initial vertices (the bare loop would then report times of larger sets).
    """
    _nonempty(g)
    if g.n == 1:
        return PtiResult((0,), 1, T or 1)
    T = zm.default_horizon(g) if T is None else T
    budget = _Budget(time_limit, node_limit)
    out = _Log(log)
    times, Z, k, solves = [], None, 0, 0
    status, guarded = OPTIMAL, False
    if fix_size:
        cut = zf_via_cut_generation(g, budget.remaining(), node_limit)
        if cut.value is None:
            return PtiResult((), None, T, BUDGET_EXCEEDED)
        Z = cut.value
    try:
        while k <= T:
            m = zm.build_tsm_pti(g, T, k)
            tv = m.meta["vars"]
            if fix_size:
                m.add_constraint({tv.x[v, 0]: 1 for v in range(g.n)}, EQ, Z, "size")
            sol = budget.solve(m)
            solves += 1
            if sol.status == INFEASIBLE:
                break
            if sol.status != OPTIMAL:
                status = sol.status
                break
            c = zm.extract_zfs(sol, m)
            steps = _as_int(sum(sol.assignment[j] for j in tv.z.values()))
            if steps < k:
                raise RuntimeError(f"step count {steps} below lower bound {k}")
            if forcing.propagation_time(g, c) != steps:
                raise zm.ExtractionError("realized time differs from the synchronous game")
            out.write(event="pti", k=k, size=len(c), time=steps)
            if Z is None:
                Z = len(c)
            elif len(c) > Z and guard:
                guarded = True
                break
            times.append(steps)
            k = steps + 1
    finally:
        out.close()
    return PtiResult(tuple(times), Z, T, status, solves, guarded)


def oracle_pti(g: Graph) -> tuple:
    return forcing.oracle_pt_PT(g)[2]


# ---------------------------------------------------------------- forts

def all_minimal_forts(g: Graph, time_limit=DEFAULT_TIME_LIMIT, node_limit=None, log=None,
                      size_floor: bool = True) -> FortCollection:
    """Every minimal fort, found as successive minimum forts avoiding supersets of earlier ones.

    With ``size_floor`` each model also carries ``sum_v x_v >= s`` where
    ``s`` is the size of the last fort found; optima never decrease along
    the loop, so the row removes nothing.
    """
    _nonempty(g)
    if g.n == 1:
        return FortCollection((frozenset({0}),), all_minimal=True, complete=True)
    budget = _Budget(time_limit, node_limit)
    out = _Log(log)
    found = []
    complete = True
    try:
        m = zm.build_minimal_fort_excl(g, [])
        x = m.meta["vars"].v
        floor = 1
        while True:
            sol = budget.solve(m)
            if sol.status == INFEASIBLE:
                break
            if sol.status != OPTIMAL:
                complete = False
                break
            f = zm.extract_fort(sol, m)
            for e in found:
                if e <= f:
                    raise zm.ExtractionError("new fort contains an earlier one")
            found.append(f)
            out.write(event="fort", index=len(found), fort=f)
            if size_floor and len(f) > floor:
                # excluding more forts only shrinks the feasible set
                floor = len(f)
                m.add_constraint({x[v]: 1 for v in range(g.n)}, GE, floor, f"floor_{floor}")
            # same rows as rebuilding with the longer exclusion list
            m.add_constraint({x[v]: 1 for v in sorted(f)}, LE, len(f) - 1, f"excl_{len(found) - 1}")
            m.meta["excl"] = tuple(found)
    finally:
        out.close()
    forts = tuple(sorted(found, key=lambda f: (len(f), sorted(f))))
    return FortCollection(forts, all_minimal=True, complete=complete,
                          meta={"status": OPTIMAL if complete else BUDGET_EXCEEDED})


class FtResult(NamedTuple):
    value: int | None
    packing: FortCollection | None
    status: str


def fort_number(g: Graph, time_limit=DEFAULT_TIME_LIMIT, node_limit=None,
                symmetry_breaking: bool = False) -> FtResult:
    _nonempty(g)
    if g.n == 1:
        return FtResult(1, FortCollection((frozenset({0}),), all_minimal=True), OPTIMAL)
    m = zm.build_fort_number(g, symmetry_breaking)
    sol = solve_ip(m, time_limit=time_limit, node_limit=node_limit,
                   incumbent=zm.fn_assignment(m, [range(g.n)]))
    if not sol.is_optimal:
        return FtResult(None, None, sol.status)
    packing = zm.extract_packing(sol, m)
    value = _as_int(sol.objective_value)
    if len(packing) != value:
        raise zm.ExtractionError("packing size differs from objective")
    return FtResult(value, packing, OPTIMAL)


# ---------------------------------------------------------------- minimum rank

@dataclass(frozen=True)
class RankData:
    """Minimum rank of a graph and of each single-vertex deletion."""

    graph: Graph
    mr: int
    mr_minus: tuple

    def __post_init__(self):
        if len(self.mr_minus) != self.graph.n:
            raise ValueError("need one deleted-vertex rank per vertex")
        for v in range(self.graph.n):
            r = self.spread(v)
            if not 0 <= r <= 2:
                raise ValueError(f"rank spread {r} at vertex {v} outside [0, 2]")

    def spread(self, v: int) -> int:
        return self.mr - self.mr_minus[v]

    @property
    def M(self) -> int:
        return self.graph.n - self.mr


SMALL_ORDER = 7  # maximum nullity equals Z up to this order


def _mr_small(g: Graph) -> int:
    if g.n == 0:
        return 0
    if g.n > SMALL_ORDER:
        raise ValueError(f"minimum rank is only derived for order <= {SMALL_ORDER}")
    return g.n - forcing.oracle_Z(g)[0]


def rank_data_small(g: Graph) -> RankData:
    """Rank data from ``mr = n - Z``, valid for order at most seven."""
    return RankData(g, _mr_small(g), tuple(_mr_small(g.remove_vertex(v)) for v in range(g.n)))


def read_rank_table(path) -> dict:
    """Parse ``graph6 mr mr(G-0) mr(G-1) ...`` lines; ``#`` starts a comment."""
    table = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            g = parse_graph6(parts[0])
            nums = [int(p) for p in parts[1:]]
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
        if len(nums) != g.n + 1:
            raise ValueError(f"{path}:{lineno}: expected {g.n + 1} ranks, got {len(nums)}")
        table[parts[0]] = RankData(g, nums[0], tuple(nums[1:]))
    return table


def write_rank_table(path, rows) -> None:
    with open(path, "w") as fh:
        fh.write("# graph6 mr mr(G-v) for v = 0..n-1\n")
        for rd in rows:
            fh.write(" ".join([encode_graph6(rd.graph), str(rd.mr)] + [str(r) for r in rd.mr_minus]) + "\n")


def rank_data_for(g: Graph, table: dict | None = None) -> RankData | None:
    key = encode_graph6(g)
    if table and key in table:
        return table[key]
    if g.n <= SMALL_ORDER:
        return rank_data_small(g)
    return None


def mr_vertex_sum(components) -> int:
    """Minimum rank of graphs glued at one shared vertex.

    ``components`` is a list of ``(RankData, v)`` pairs; the result is
    ``sum mr(G_i - v) + min(sum r_v(G_i), 2)``.
    """
    if not components:
        raise ValueError("need at least one component")
    if len(components) == 1:
        rd, _ = components[0]
        return rd.mr
    base = sum(rd.mr_minus[v] for rd, v in components)
    return base + min(sum(rd.spread(v) for rd, v in components), 2)


def mr_edge_sum(g_data: RankData, h_data: RankData, u: int, u2: int) -> int:
    """Minimum rank after joining two graphs by the edge ``u u2``."""
    total = g_data.mr + h_data.mr
    if g_data.spread(u) == 2 or h_data.spread(u2) == 2:
        return total
    return total + 1


@dataclass
class BoundReport:
    ft: int | None
    zstar: Fraction | None
    Z: int | None
    M: int | None = None
    status: str = OPTIMAL

    @property
    def chain_holds(self) -> bool | None:
        """``ft <= Z* <= M`` (or ``<= Z`` when M is unknown); None if incomplete."""
        top = self.M if self.M is not None else self.Z
        if None in (self.ft, self.zstar, top):
            return None
        return self.ft <= self.zstar <= top and self.zstar <= self.Z


def m_lower_bound_report(g: Graph, rank: RankData | int | None = None, time_limit=DEFAULT_TIME_LIMIT,
                         node_limit=None) -> BoundReport:
    _nonempty(g)
    budget = _Budget(time_limit, node_limit)
    ft = fort_number(g, budget.remaining(), node_limit)
    zs = fractional_zf(g, budget.remaining(), node_limit)
    z = zf_via_cut_generation(g, budget.remaining(), node_limit)
    if isinstance(rank, RankData):
        M = rank.M
    elif rank is not None:
        M = int(rank)
    elif g.n <= SMALL_ORDER:
        M = z.value
    else:
        M = None
    ok = all(s == OPTIMAL for s in (ft.status, zs.state.status, z.state.status))
    return BoundReport(ft.value, zs.value, z.value, M, OPTIMAL if ok else BUDGET_EXCEEDED)


def format_fraction(v) -> str:
    """``p/q`` followed by a 6-decimal rendering; integers print plainly."""
    if v is None:
        return "NA"
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator} ({float(v):.6f})"
