"""Exact revised primal simplex on bounded variables (Bland's rule).

The model ``l <= x <= u``, ``L <= A x <= U`` is put in computational form
by giving every row an activity variable ``r_i``: ``A x - r = 0`` with
``L <= r <= U``.  Column ``j < n`` is structural, column ``n + i`` is the
activity of row ``i``.  Phase 1 uses one artificial column per violated
row.  The basis is refactorized exactly at every iteration.
"""

from __future__ import annotations

from fractions import Fraction

from .lu import SingularMatrix, SparseLU
from .model import INFEASIBLE, OPTIMAL, UNBOUNDED, BUDGET_EXCEEDED, LinearModel

ZERO = Fraction(0)


class LPData:
    """Computational form of a model, in minimization sense."""

    def __init__(self, model: LinearModel, bounds=None):
        n, m = model.num_vars, model.num_constraints
        self.n, self.m = n, m
        self.sign = 1 if model.sense == "min" else -1
        cols: list[dict[int, Fraction]] = [dict() for _ in range(n)]
        for i, c in enumerate(model.constraints):
            for j, a in c.coeffs:
                cols[j][i] = a
        for i in range(m):
            cols.append({i: Fraction(-1)})
        self.cols = cols
        lo = [v.lb for v in model.variables]
        up = [v.ub for v in model.variables]
        if bounds is not None:
            lo = [None if b is None else Fraction(b) for b in bounds[0]]
            up = [None if b is None else Fraction(b) for b in bounds[1]]
        for c in model.constraints:
            lo_i, up_i = c.bounds()
            lo.append(lo_i)
            up.append(up_i)
        self.lo, self.up = lo, up
        cost = [ZERO] * (n + m)
        for j, a in model.objective.items():
            cost[j] = self.sign * a
        self.cost = cost


class LPResult:
    __slots__ = ("status", "x", "y", "objective", "pivots", "basis")

    def __init__(self, status, x=None, y=None, objective=None, pivots=0, basis=None):
        self.status = status
        self.x = x
        self.y = y
        self.objective = objective
        self.pivots = pivots
        self.basis = basis


def _nb_value(st, lo, up):
    if st == "L":
        return lo
    if st == "U":
        return up
    return ZERO


class _Budget(Exception):
    pass


def _iterate(cols, lo, up, cost, basic, nbstat, m, state):
    """Run primal simplex from a primal feasible basis until optimal.

    Returns ``("optimal", xB, y, lu)`` or ``("unbounded", ...)``.  Mutates
    ``basic`` and ``nbstat`` in place.
    """
    while True:
        lu = SparseLU([cols[j] for j in basic], m)
        rhs = [ZERO] * m
        for j, st in nbstat.items():
            v = _nb_value(st, lo[j], up[j])
            if v:
                for i, a in cols[j].items():
                    rhs[i] -= a * v
        xb = lu.solve(rhs)
        y = lu.solve_transpose([cost[j] for j in basic])
        enter = None
        direction = 0
        for j in sorted(nbstat):
            if lo[j] is not None and lo[j] == up[j]:
                continue
            d = cost[j]
            for i, a in cols[j].items():
                yi = y[i]
                if yi:
                    d -= a * yi
            st = nbstat[j]
            if d < 0 and st != "U":
                enter, direction = j, 1
            elif d > 0 and st != "L":
                enter, direction = j, -1
            else:
                continue
            break
        if enter is None:
            return "optimal", xb, y
        if state["limit"] is not None and state["pivots"] >= state["limit"]:
            raise _Budget()
        col = [ZERO] * m
        for i, a in cols[enter].items():
            col[i] = a
        alpha = lu.solve(col)
        # x_B moves by -direction * alpha * theta
        best = None  # (theta, column index, position or -1, bound kind)
        if lo[enter] is not None and up[enter] is not None:
            best = (up[enter] - lo[enter], enter, -1, None)
        for p in range(m):
            a = alpha[p]
            if not a:
                continue
            rate = -direction * a
            j = basic[p]
            if rate < 0 and lo[j] is not None:
                cand = ((xb[p] - lo[j]) / -rate, j, p, "L")
            elif rate > 0 and up[j] is not None:
                cand = ((up[j] - xb[p]) / rate, j, p, "U")
            else:
                continue
            if best is None or cand[:2] < best[:2]:
                best = cand
        if best is None:
            return "unbounded", xb, y
        state["pivots"] += 1
        _, j_out, p, kind = best
        if p < 0:
            nbstat[enter] = "U" if nbstat[enter] == "L" else "L"
            continue
        del nbstat[enter]
        basic[p] = enter
        nbstat[j_out] = kind


def _collect(n, basic, nbstat, xb, lo, up):
    x = [ZERO] * n
    for j, st in nbstat.items():
        if j < n:
            x[j] = _nb_value(st, lo[j], up[j])
    for p, j in enumerate(basic):
        if j < n:
            x[j] = xb[p]
    return x


def _try_hint(data: LPData, hint):
    """Validate a warm-start basis; return ``(basic, nbstat)`` or ``None``."""
    n, m = data.n, data.m
    basic_in, stat_in = hint
    basic = list(basic_in)
    if len(basic) != m or len(set(basic)) != m or any(not 0 <= j < n + m for j in basic):
        return None
    bset = set(basic)
    nbstat = {}
    for j in range(n + m):
        if j in bset:
            continue
        st = stat_in.get(j, "L")
        lo, up = data.lo[j], data.up[j]
        if st == "L" and lo is None:
            st = "U" if up is not None else "Z"
        elif st == "U" and up is None:
            st = "L" if lo is not None else "Z"
        elif st == "Z" and (lo is not None or up is not None):
            st = "L" if lo is not None else "U"
        nbstat[j] = st
    try:
        lu = SparseLU([data.cols[j] for j in basic], m)
    except SingularMatrix:
        return None
    rhs = [ZERO] * m
    for j, st in nbstat.items():
        v = _nb_value(st, data.lo[j], data.up[j])
        if v:
            for i, a in data.cols[j].items():
                rhs[i] -= a * v
    xb = lu.solve(rhs)
    for p, j in enumerate(basic):
        if (data.lo[j] is not None and xb[p] < data.lo[j]) or (data.up[j] is not None and xb[p] > data.up[j]):
            return None
    return basic, nbstat


def simplex(data: LPData, hint=None, max_pivots=None) -> LPResult:
    n, m = data.n, data.m
    state = {"pivots": 0, "limit": max_pivots}
    lo, up = list(data.lo), list(data.up)
    for j in range(n + m):
        if lo[j] is not None and up[j] is not None and lo[j] > up[j]:
            return LPResult(INFEASIBLE)
    start = _try_hint(data, hint) if hint is not None else None
    try:
        if start is None:
            start = _phase1(data, lo, up, state)
            if start is None:
                return LPResult(INFEASIBLE, pivots=state["pivots"])
            cols, lo, up, basic, nbstat = start
        else:
            cols = data.cols
            basic, nbstat = start
        cost = data.cost + [ZERO] * (len(cols) - len(data.cost))
        outcome, xb, y = _iterate(cols, lo, up, cost, basic, nbstat, m, state)
    except _Budget:
        return LPResult(BUDGET_EXCEEDED, pivots=state["pivots"])
    if outcome == "unbounded":
        return LPResult(UNBOUNDED, pivots=state["pivots"])
    x = _collect(n, basic, nbstat, xb, lo, up)
    obj = sum((data.cost[j] * x[j] for j in range(n) if data.cost[j]), ZERO)
    basis = None
    if all(j < n + m for j in basic):
        basis = (tuple(basic), {j: st for j, st in nbstat.items() if j < n + m})
    return LPResult(OPTIMAL, x, y, data.sign * obj, state["pivots"], basis)


def _phase1(data: LPData, lo, up, state):
    n, m = data.n, data.m
    cols = list(data.cols)
    lo, up = list(lo), list(up)
    nbstat = {}
    x = [ZERO] * n
    for j in range(n):
        if lo[j] is not None:
            nbstat[j] = "L"
            x[j] = lo[j]
        elif up[j] is not None:
            nbstat[j] = "U"
            x[j] = up[j]
        else:
            nbstat[j] = "Z"
    act = [ZERO] * m
    for j in range(n):
        if x[j]:
            for i, a in cols[j].items():
                act[i] += a * x[j]
    basic = []
    cost = [ZERO] * (n + m)
    for i in range(m):
        L, U = lo[n + i], up[n + i]
        v = act[i]
        if (L is None or v >= L) and (U is None or v <= U):
            basic.append(n + i)
            continue
        if L is not None and v < L:
            b, nbstat[n + i] = L, "L"
        else:
            b, nbstat[n + i] = U, "U"
        k = len(cols)
        cols.append({i: Fraction(1)})
        if b - v > 0:
            lo.append(ZERO)
            up.append(None)
            cost.append(Fraction(1))
        else:
            lo.append(None)
            up.append(ZERO)
            cost.append(Fraction(-1))
        basic.append(k)
    if len(cols) == n + m:
        return cols, lo, up, basic, nbstat
    outcome, xb, _ = _iterate(cols, lo, up, cost, basic, nbstat, m, state)
    infeas = sum((cost[j] * xb[p] for p, j in enumerate(basic) if j >= n + m), ZERO)
    if infeas > 0:
        return None
    for k in range(n + m, len(cols)):
        lo[k] = ZERO
        up[k] = ZERO
        if k in nbstat:
            nbstat[k] = "L"
    return cols, lo, up, basic, nbstat


def lagrangian_bound(model: LinearModel, y, bounds=None) -> Fraction | None:
    """Lower bound (upper bound for max models) implied by row multipliers ``y``.

    ``y`` refers to the minimization form.  Valid for every ``y``; returns
    ``None`` when the bound is minus infinity.
    """
    data = LPData(model, bounds)
    n, m = data.n, data.m
    if len(y) != m:
        raise ValueError("multiplier vector has wrong length")
    total = ZERO
    for j in range(n):
        d = data.cost[j]
        for i, a in data.cols[j].items():
            if y[i]:
                d -= a * y[i]
        if not d:
            continue
        b = data.lo[j] if d > 0 else data.up[j]
        if b is None:
            return None
        total += d * b
    for i in range(m):
        yi = Fraction(y[i])
        if not yi:
            continue
        b = data.lo[n + i] if yi > 0 else data.up[n + i]
        if b is None:
            return None
        total += yi * b
    return data.sign * total
