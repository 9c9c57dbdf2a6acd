"""LP and integer-program entry points.

``solve_lp`` returns the exact optimum of the continuous relaxation; the
answer always comes from the rational simplex, optionally warm-started from
a HiGHS basis.  ``solve_ip`` is a depth-first branch-and-bound whose node
relaxations are solved by HiGHS and bounded exactly (see
:mod:`zfip.milp.floatlp`); any node the float route cannot certify is
re-solved by the rational simplex.
"""

from __future__ import annotations

import heapq
import math
import time
from fractions import Fraction

import numpy as np

from .floatlp import FloatLP
from .propagate import Propagator
from .model import (BUDGET_EXCEEDED, INFEASIBLE, OPTIMAL, UNBOUNDED, LinearModel,
                    ModelError, Solution, SolveStats, as_fraction)
from .simplex import LPData, lagrangian_bound, simplex

DEFAULT_TIME_LIMIT = 7200.0
INT_TOL = 1e-6


def _float_bounds(model: LinearModel):
    lo = np.array([-np.inf if v.lb is None else float(v.lb) for v in model.variables], dtype=np.float64)
    up = np.array([np.inf if v.ub is None else float(v.ub) for v in model.variables], dtype=np.float64)
    return lo, up


def solve_lp(model: LinearModel, method: str = "auto", hint=None, max_pivots=None) -> Solution:
    """Exact optimum of the continuous relaxation (integrality ignored).

    ``method="exact"`` starts the rational simplex from the slack basis;
    ``"auto"`` first asks HiGHS for a basis and certifies it exactly.
    """
    if method not in ("auto", "exact"):
        raise ModelError(f"unknown LP method {method!r}")
    model.validate()
    t0 = time.perf_counter()
    stats = SolveStats(nodes=1)
    data = LPData(model)
    if method == "auto" and hint is None and model.num_constraints:
        fl = FloatLP(model)
        status = fl.solve(*_float_bounds(model))
        stats.lp_iterations = fl.iterations
        if status == "optimal":
            hint = fl.basis()
        elif status == "infeasible":
            ray = fl.farkas_ray()
            lo = [v.lb for v in model.variables]
            up = [v.ub for v in model.variables]
            if ray is not None and fl.certify_infeasible_exact(ray, lo, up):
                stats.wall_time = time.perf_counter() - t0
                return Solution(INFEASIBLE, stats=stats, var_index=model._var_index)
    res = simplex(data, hint=hint, max_pivots=max_pivots)
    stats.exact_pivots = res.pivots
    stats.wall_time = time.perf_counter() - t0
    if res.status != OPTIMAL:
        return Solution(res.status, stats=stats, var_index=model._var_index)
    return Solution(OPTIMAL, list(res.x), res.objective, res.objective, stats,
                    duals=list(res.y), basis=res.basis, var_index=model._var_index)


def verify_lp_certificate(model: LinearModel, sol: Solution) -> bool:
    """Primal feasibility plus exact equality of the dual bound and objective."""
    if sol.status != OPTIMAL or sol.duals is None:
        return False
    relaxed = model.relaxed()
    if not relaxed.is_feasible(sol.assignment):
        return False
    if model.objective_value(sol.assignment) != sol.objective_value:
        return False
    return lagrangian_bound(model, sol.duals) == sol.objective_value


class _Node:
    __slots__ = ("lo", "up", "depth", "bound")

    def __init__(self, lo, up, depth, bound):
        self.lo = lo
        self.up = up
        self.depth = depth
        self.bound = bound


def _ceil_to(value: Fraction, g: Fraction) -> Fraction:
    return g * math.ceil(value / g)


def solve_ip(model: LinearModel, time_limit: float | None = DEFAULT_TIME_LIMIT,
             node_limit: int | None = None, incumbent=None) -> Solution:
    """Exact optimum by branch-and-bound.

    Branches on the lowest-index fractional integer variable, exploring the
    ``<= floor`` child first; nodes are taken depth-first with ties broken
    by best bound.  ``incumbent`` is an optional feasible assignment used
    as the starting upper bound.  On budget exhaustion the best incumbent
    is returned with status ``budget_exceeded``.
    """
    model.validate()
    t0 = time.perf_counter()
    ints = model.integer_indices()
    for j in ints:
        v = model.variables[j]
        if v.lb is None or v.ub is None:
            raise ModelError(f"integer variable {v.name!r} needs finite bounds")
    if not ints:
        return solve_lp(model)
    return _BranchAndBound(model, time_limit, node_limit, incumbent, t0).run()


class _BranchAndBound:
    def __init__(self, model, time_limit, node_limit, incumbent, t0):
        self.model = model
        self.sign = 1 if model.sense == "min" else -1
        self.time_limit = time_limit
        self.node_limit = node_limit
        self.t0 = t0
        self.stats = SolveStats()
        self.ints = model.integer_indices()
        self.is_int = np.zeros(model.num_vars, dtype=bool)
        self.is_int[self.ints] = True
        self.pure = bool(self.is_int.all())
        g = model.objective_granularity()
        self.gran = g if g else None
        self.fl = FloatLP(model) if model.num_vars else None
        self.prop = None
        if self.pure and self.fl is not None and model.num_constraints:
            prop = Propagator(self.fl)
            self.prop = prop if prop.ok else None
        self.best = None
        self.best_obj = None  # min form
        if incumbent is not None:
            x = [as_fraction(v) for v in incumbent]
            bad = model.violations(x)
            if bad:
                raise ModelError(f"supplied incumbent violates {bad[:5]}")
            self._offer(x)

    # -- helpers

    def _offer(self, x) -> None:
        val = self.sign * self.model.objective_value(x)
        if self.best_obj is None or val < self.best_obj:
            self.best, self.best_obj = list(x), val

    def _prunable(self, bound) -> bool:
        if self.best_obj is None or bound is None:
            return False
        if self.gran is not None:
            return _ceil_to(bound, self.gran) >= self.best_obj
        return bound >= self.best_obj

    def _exact_bounds(self, node):
        lo, up = [], []
        for j, v in enumerate(self.model.variables):
            if self.is_int[j]:
                lo.append(Fraction(int(node.lo[j])))
                up.append(Fraction(int(node.up[j])))
            else:
                lo.append(v.lb)
                up.append(v.ub)
        return lo, up

    def _bound_from_duals(self, y, node):
        if self.pure:
            return self.fl.safe_bound(y, node.lo.astype(np.int64), node.up.astype(np.int64))
        lo, up = self._exact_bounds(node)
        return self.fl.exact_bound(y, lo, up)

    def _certify_empty(self, node) -> bool:
        ray = self.fl.farkas_ray()
        if ray is None:
            return False
        if self.pure:
            return self.fl.certify_infeasible(ray, node.lo.astype(np.int64), node.up.astype(np.int64))
        lo, up = self._exact_bounds(node)
        return self.fl.certify_infeasible_exact(ray, lo, up)

    def _complete_mixed(self, x_int):
        """Fix integer variables and solve the rest exactly; returns an assignment or ``None``."""
        bounds = {j: (x_int[j], x_int[j]) for j in self.ints}
        res = solve_lp(self.model.with_bounds(bounds), method="exact")
        self.stats.exact_pivots += res.stats.exact_pivots
        return res.assignment if res.status == OPTIMAL else None

    def _budget_hit(self) -> bool:
        if self.node_limit is not None and self.stats.nodes >= self.node_limit:
            return True
        return self.time_limit is not None and time.perf_counter() - self.t0 > self.time_limit

    # -- node processing

    def _exact_node(self, node):
        """Rational re-solve of a node: ``(status, bound, x)``."""
        self.stats.exact_fallbacks += 1
        lo, up = self._exact_bounds(node)
        hint = self.fl.basis()
        res = simplex(LPData(self.model, (lo, up)), hint=hint)
        self.stats.exact_pivots += res.pivots
        if res.status != OPTIMAL:
            return res.status, None, None
        return OPTIMAL, self.sign * res.objective, res.x

    def _process(self, node):
        """Solve one node; returns a branching pair or ``None``."""
        if self.prop is not None:
            box = self.prop(node.lo, node.up)
            if box is None:
                self.stats.propagated_out += 1
                return None
            node.lo = box[0].astype(np.float64)
            node.up = box[1].astype(np.float64)
            if (box[0] == box[1]).all():
                # every row's activity range collapsed inside its bounds: a feasible point
                self.stats.settled_by_propagation += 1
                self._offer([Fraction(int(v)) for v in box[0]])
                return None
        status = self.fl.solve(node.lo, node.up)
        if status == "optimal":
            bound = self._bound_from_duals(self.fl.row_duals(), node)
            if bound is not None and (node.bound is None or bound > node.bound):
                node.bound = bound
            if self._prunable(bound):
                return None
            if self.pure and bound is not None and self.best_obj is not None:
                self._fix_by_reduced_cost(node, bound)
            x = self.fl.primal()
            frac = self._first_fractional(x)
            if frac is None:
                xr = [Fraction(round(v)) if self.is_int[j] else None for j, v in enumerate(x)]
                cand = xr if self.pure else self._complete_mixed(xr)
                if cand is not None and self.model.is_feasible(cand):
                    self._offer(cand)
                    if self._prunable(bound):
                        return None
            else:
                j, val = frac
                return self._children(node, j, math.floor(val))
        elif status == "infeasible":
            if self._certify_empty(node):
                return None
        # float route inconclusive: settle the node exactly
        st, bound, x = self._exact_node(node)
        if st == INFEASIBLE:
            return None
        if st == UNBOUNDED:
            raise _Unbounded()
        if st != OPTIMAL:
            raise RuntimeError(f"exact node solve returned {st}")
        node.bound = bound if node.bound is None else max(node.bound, bound)
        if self._prunable(bound):
            return None
        for j in self.ints:
            if x[j].denominator != 1:
                return self._children(node, j, math.floor(x[j]))
        cand = x
        if not self.pure:
            cand = self._complete_mixed([x[j] if self.is_int[j] else None for j in range(len(x))])
        if cand is not None:
            self._offer(cand)
        return None

    def _fix_by_reduced_cost(self, node, bound) -> None:
        """Fix variables whose move off their bound would push the exact bound past the incumbent.

        Moving ``x_j`` one unit away from the bound it sits at in the
        Lagrangian raises the bound by exactly ``|d_j|``.
        """
        rc, den = self.fl.last_rc
        gap = self.best_obj - bound
        if self.gran is not None:
            gap -= self.gran  # prune once the bound exceeds best - g
            limit = math.floor(gap * den)
        else:
            limit = math.ceil(gap * den) - 1  # prune once the bound reaches best
        if limit < 0:
            return
        if limit >= 2 ** 62 or max(map(abs, rc), default=0) >= 2 ** 62:
            return
        lo, up = node.lo, node.up
        d = np.array(rc, dtype=np.int64)
        open_ = lo < up
        at_lo = open_ & (d > limit)
        at_up = open_ & (-d > limit)
        if at_lo.any() or at_up.any():
            node.up = np.where(at_lo, lo, up)
            node.lo = np.where(at_up, up, lo)
            self.stats.fixed_by_cost += int(at_lo.sum() + at_up.sum())

    def _first_fractional(self, x):
        for j in self.ints:
            v = x[j]
            if abs(v - round(v)) > INT_TOL:
                return j, v
        return None

    def _children(self, node, j, fl):
        self.stats.branch_nodes += 1
        fl = min(max(fl, int(node.lo[j])), int(node.up[j]) - 1)
        down_up = node.up.copy()
        down_up[j] = fl
        up_lo = node.lo.copy()
        up_lo[j] = fl + 1
        return (_Node(node.lo, down_up, node.depth + 1, node.bound),
                _Node(up_lo, node.up, node.depth + 1, node.bound))

    def run(self) -> Solution:
        model = self.model
        lo, up = _float_bounds(model)
        for j in self.ints:
            lo[j] = math.ceil(model.variables[j].lb)
            up[j] = math.floor(model.variables[j].ub)
            if lo[j] > up[j]:
                return self._finish(INFEASIBLE, [])
        heap = [(0, -math.inf, 0, _Node(lo, up, 0, None))]
        seq = 1
        try:
            while heap:
                if self._budget_hit():
                    return self._finish(BUDGET_EXCEEDED, heap)
                _, _, _, node = heapq.heappop(heap)
                if self._prunable(node.bound):
                    continue
                self.stats.nodes += 1
                kids = self._process(node)
                if kids is None:
                    continue
                for kid in kids:
                    key = -math.inf if kid.bound is None else kid.bound
                    heapq.heappush(heap, (-kid.depth, key, seq, kid))
                    seq += 1
        except _Unbounded:
            return self._finish(UNBOUNDED, [])
        return self._finish(OPTIMAL if self.best is not None else INFEASIBLE, [])

    def _finish(self, status, heap) -> Solution:
        st = self.stats
        st.lp_iterations = self.fl.iterations if self.fl is not None else 0
        st.wall_time = time.perf_counter() - self.t0
        obj = None if self.best_obj is None else self.sign * self.best_obj
        if status == OPTIMAL:
            bound = obj
        elif status == BUDGET_EXCEEDED:
            open_bounds = [n.bound for *_, n in heap]
            if any(b is None for b in open_bounds):
                b = None
            else:
                b = min(open_bounds + ([self.best_obj] if self.best_obj is not None else []), default=None)
            bound = None if b is None else self.sign * b
        else:
            bound = None
        assignment = self.best if status in (OPTIMAL, BUDGET_EXCEEDED) else None
        return Solution(status, assignment, obj if assignment is not None else None, bound, st,
                        var_index=self.model._var_index)


class _Unbounded(Exception):
    pass
