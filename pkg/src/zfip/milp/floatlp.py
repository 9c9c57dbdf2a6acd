"""Floating-point LP oracle (HiGHS) plus exact certificates for its answers.

HiGHS solves node relaxations quickly; nothing it returns is trusted.
Lower bounds are recomputed from rounded duals by weak duality in integer
arithmetic, infeasibility is certified from a rounded Farkas ray, and
optimal bases are handed to the exact simplex as warm starts.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import highspy
import numpy as np
from scipy import sparse

from .model import LinearModel

INF = highspy.kHighsInf
SCALE_BITS = 24
_SAFE = 2 ** 62

_BASIS_CODE = {
    highspy.HighsBasisStatus.kLower: "L",
    highspy.HighsBasisStatus.kUpper: "U",
    highspy.HighsBasisStatus.kZero: "Z",
    highspy.HighsBasisStatus.kNonbasic: "L",
}


def _int_row(coeffs, lo, up):
    den = 1
    for _, a in coeffs:
        den = lcm(den, a.denominator)
    for b in (lo, up):
        if b is not None:
            den = lcm(den, b.denominator)
    row = [(j, int(a * den)) for j, a in coeffs]
    return row, None if lo is None else int(lo * den), None if up is None else int(up * den)


class FloatLP:
    """HiGHS relaxation of ``model`` with every row scaled to integers.

    Column bounds are supplied per solve, so one instance serves a whole
    branch-and-bound tree.
    """

    def __init__(self, model: LinearModel):
        n, m = model.num_vars, model.num_constraints
        self.n, self.m = n, m
        self.sign = 1 if model.sense == "min" else -1
        rows, rlo, rup = [], [], []
        for c in model.constraints:
            lo, up = c.bounds()
            row, lo_i, up_i = _int_row(c.coeffs, lo, up)
            rows.append(row)
            rlo.append(lo_i)
            rup.append(up_i)
        self.row_lo, self.row_up = rlo, rup
        cost = [Fraction(0)] * n
        for j, a in model.objective.items():
            cost[j] = self.sign * a
        den = 1
        for a in cost:
            den = lcm(den, a.denominator)
        self.cost_den = den
        self.cost_int = [int(a * den) for a in cost]

        ri, ci, vals = [], [], []
        for i, row in enumerate(rows):
            for j, a in row:
                ri.append(i)
                ci.append(j)
                vals.append(a)
        self.A = sparse.csr_matrix((np.array(vals, dtype=np.int64), (ri, ci)), shape=(m, n))
        self.AT = self.A.T.tocsr()
        self.col_abs = np.asarray(abs(self.A).sum(axis=0)).ravel() if m else np.zeros(n, dtype=np.int64)
        self.rlo_arr = np.array([0 if b is None else b for b in rlo], dtype=np.int64)
        self.rup_arr = np.array([0 if b is None else b for b in rup], dtype=np.int64)
        self.rlo_inf = np.array([b is None for b in rlo], dtype=bool)
        self.rup_inf = np.array([b is None for b in rup], dtype=bool)
        self.cost_arr = np.array(self.cost_int, dtype=object)
        self.ints_ok = all(abs(c) < 2 ** 40 for c in self.cost_int) and (
            not vals or max(abs(v) for v in vals) < 2 ** 20) and all(
            b is None or abs(b) < 2 ** 30 for b in rlo + rup)

        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        h.setOptionValue("threads", 1)
        h.setOptionValue("presolve", "off")
        h.setOptionValue("random_seed", 0)
        lp = highspy.HighsLp()
        lp.num_col_ = n
        lp.num_row_ = m
        lp.col_cost_ = np.array([float(a) for a in cost], dtype=np.float64)
        lp.col_lower_ = np.array([-INF if v.lb is None else float(v.lb) for v in model.variables], dtype=np.float64)
        lp.col_upper_ = np.array([INF if v.ub is None else float(v.ub) for v in model.variables], dtype=np.float64)
        lp.row_lower_ = np.array([-INF if b is None else float(b) for b in rlo], dtype=np.float64)
        lp.row_upper_ = np.array([INF if b is None else float(b) for b in rup], dtype=np.float64)
        csc = self.A.tocsc()
        lp.a_matrix_.format_ = highspy.MatrixFormat.kColwise
        lp.a_matrix_.start_ = csc.indptr.astype(np.int32)
        lp.a_matrix_.index_ = csc.indices.astype(np.int32)
        lp.a_matrix_.value_ = csc.data.astype(np.float64)
        lp.a_matrix_.num_col_ = n
        lp.a_matrix_.num_row_ = m
        h.passModel(lp)
        self.h = h
        self._idx = np.arange(n, dtype=np.int32)
        self.iterations = 0
        self.last_rc = None

    def solve(self, lo: np.ndarray, up: np.ndarray) -> str:
        """Solve with column bounds ``lo``/``up`` (floats, +-inf allowed)."""
        h = self.h
        if self.n:
            h.changeColsBounds(self.n, self._idx, lo, up)
        h.run()
        self.iterations += int(h.getInfo().simplex_iteration_count)
        st = h.getModelStatus()
        if st == highspy.HighsModelStatus.kOptimal:
            return "optimal"
        if st == highspy.HighsModelStatus.kInfeasible:
            return "infeasible"
        if st == highspy.HighsModelStatus.kUnbounded:
            return "unbounded"
        return "unknown"

    def primal(self) -> np.ndarray:
        return np.array(self.h.getSolution().col_value, dtype=np.float64)

    def row_duals(self) -> np.ndarray:
        return np.array(self.h.getSolution().row_dual, dtype=np.float64)

    def basis(self):
        """Current basis as ``(basic columns, nonbasic status)`` in exact-simplex indexing."""
        b = self.h.getBasis()
        if not b.valid:
            return None
        basic = []
        stat = {}
        for j, s in enumerate(b.col_status):
            if s == highspy.HighsBasisStatus.kBasic:
                basic.append(j)
            else:
                stat[j] = _BASIS_CODE.get(s, "L")
        for i, s in enumerate(b.row_status):
            if s == highspy.HighsBasisStatus.kBasic:
                basic.append(self.n + i)
            else:
                stat[self.n + i] = _BASIS_CODE.get(s, "L")
        if len(basic) != self.m:
            return None
        return basic, stat

    def farkas_ray(self) -> np.ndarray | None:
        try:
            status, has_ray, ray = self.h.getDualRay()
        except Exception:
            return None
        if not has_ray:
            return None
        return np.asarray(ray, dtype=np.float64)

    # -- exact bounds

    def _round(self, y: np.ndarray) -> np.ndarray:
        scale = float(2 ** SCALE_BITS)
        Y = np.rint(y * scale)
        Y[np.abs(Y) > 2 ** 52] = 0
        Y = Y.astype(np.int64)
        # multipliers must not reach an infinite row side
        Y[(Y > 0) & self.rlo_inf] = 0
        Y[(Y < 0) & self.rup_inf] = 0
        return Y

    def safe_bound(self, y: np.ndarray, lo: np.ndarray, up: np.ndarray,
                   with_cost: bool = True) -> Fraction | None:
        """Exact weak-duality bound for the min form from float multipliers.

        ``lo``/``up`` are integer column bounds (numpy int64); returns
        ``None`` for minus infinity.
        """
        Y = self._round(y)
        D = self.cost_den if with_cost else 1
        ymax = int(np.abs(Y).max()) if len(Y) else 0
        bmax = int(max(np.abs(lo).max(initial=0), np.abs(up).max(initial=0)))
        cmax = max((abs(c) for c in self.cost_int), default=0) if with_cost else 0
        dmax = cmax * 2 ** SCALE_BITS + D * ymax * int(self.col_abs.max(initial=0))
        rmax = int(max(np.abs(self.rlo_arr).max(initial=0), np.abs(self.rup_arr).max(initial=0)))
        fast = (self.ints_ok and dmax * max(bmax, 1) * max(self.n, 1) < _SAFE
                and D * ymax * max(rmax, 1) * max(self.m, 1) < _SAFE)
        if fast:
            aty = self.AT @ Y if self.m else np.zeros(self.n, dtype=np.int64)
            if with_cost:
                d = np.array(self.cost_int, dtype=np.int64) * (2 ** SCALE_BITS) - D * aty
            else:
                d = -aty
            col_term = int(np.where(d > 0, d * lo, d * up).sum())
            row_term = int(np.where(Y > 0, Y * self.rlo_arr, Y * self.rup_arr).sum())
            total = col_term + D * row_term
            rc = [int(v) for v in d]
        else:
            Yl = [int(v) for v in Y]
            aty = [0] * self.n
            A = self.A
            for i in range(self.m):
                if Yl[i]:
                    for k in range(A.indptr[i], A.indptr[i + 1]):
                        aty[A.indices[k]] += int(A.data[k]) * Yl[i]
            total = 0
            rc = []
            for j in range(self.n):
                dj = (self.cost_int[j] * 2 ** SCALE_BITS if with_cost else 0) - D * aty[j]
                rc.append(dj)
                total += dj * (int(lo[j]) if dj > 0 else int(up[j]))
            for i in range(self.m):
                if Yl[i] > 0:
                    total += D * Yl[i] * self.row_lo[i]
                elif Yl[i] < 0:
                    total += D * Yl[i] * self.row_up[i]
        # exact reduced costs behind this bound, scaled by the same denominator
        self.last_rc = (rc, D * 2 ** SCALE_BITS)
        return Fraction(total, D * 2 ** SCALE_BITS)

    def certify_infeasible(self, ray: np.ndarray, lo: np.ndarray, up: np.ndarray) -> bool:
        """True when a rounded Farkas multiplier proves the node LP empty."""
        top = float(np.abs(ray).max()) if len(ray) else 0.0
        if top == 0.0 or not np.isfinite(top):
            return False
        for sgn in (1.0, -1.0):
            b = self.safe_bound(sgn * ray / top, lo, up, with_cost=False)
            if b is not None and b > 0:
                return True
        return False

    def exact_bound(self, y: np.ndarray, lo, up, with_cost: bool = True) -> Fraction | None:
        """Rational version of :meth:`safe_bound` for arbitrary column bounds.

        ``lo``/``up`` are sequences of ``Fraction`` or ``None``.
        """
        Y = [int(v) for v in self._round(y)]
        scale = 2 ** SCALE_BITS
        aty = [0] * self.n
        A = self.A
        for i in range(self.m):
            if Y[i]:
                for k in range(A.indptr[i], A.indptr[i + 1]):
                    aty[A.indices[k]] += int(A.data[k]) * Y[i]
        total = Fraction(0)
        for j in range(self.n):
            dj = Fraction(aty[j], -scale)
            if with_cost:
                dj += Fraction(self.cost_int[j], self.cost_den)
            if not dj:
                continue
            b = lo[j] if dj > 0 else up[j]
            if b is None:
                return None
            total += dj * b
        for i in range(self.m):
            if Y[i]:
                b = self.row_lo[i] if Y[i] > 0 else self.row_up[i]
                total += Fraction(Y[i] * b, scale)
        return total

    def certify_infeasible_exact(self, ray: np.ndarray, lo, up) -> bool:
        top = float(np.abs(ray).max()) if len(ray) else 0.0
        if top == 0.0 or not np.isfinite(top):
            return False
        for sgn in (1.0, -1.0):
            b = self.exact_bound(sgn * ray / top, lo, up, with_cost=False)
            if b is not None and b > 0:
                return True
        return False
