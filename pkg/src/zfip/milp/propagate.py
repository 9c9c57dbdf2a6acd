"""Activity-based bound tightening for pure integer models.

Rows are the integer-scaled rows of :class:`~zfip.milp.floatlp.FloatLP`.
For every row ``lo <= a.x <= up`` and entry ``a_j``, the remaining entries'
extreme activities bound ``a_j x_j``; rounding to integers tightens the
column bounds.  All arithmetic is exact int64 on small integers.
"""

from __future__ import annotations

import numpy as np

_BIG = 2 ** 40
_LIMIT = 2 ** 20


class Propagator:
    def __init__(self, fl):
        coo = fl.A.tocoo()
        order = np.lexsort((coo.row, coo.col))
        self.r = coo.row[order].astype(np.int64)
        self.c = coo.col[order].astype(np.int64)
        self.a = coo.data[order].astype(np.int64)
        self.n, self.m = fl.n, fl.m
        self.pos = self.a > 0
        # segment starts per column for reduceat
        cols, starts = np.unique(self.c, return_index=True)
        self.cols, self.starts = cols, starts
        self.has_up = ~fl.rup_inf
        self.has_lo = ~fl.rlo_inf
        self.rup = np.where(self.has_up, fl.rup_arr, 0)
        self.rlo = np.where(self.has_lo, fl.rlo_arr, 0)
        A = fl.A.tocsr().astype(np.int64)
        self.Apos = A.multiply(A > 0).tocsr()
        self.Aneg = A.multiply(A < 0).tocsr()
        self.ok = fl.ints_ok and len(self.a) > 0

    def __call__(self, lo, up, rounds: int = 25):
        """Tightened ``(lo, up)`` int64 arrays, or ``None`` if the box is empty."""
        lo = lo.astype(np.int64)
        up = up.astype(np.int64)
        if (lo > up).any():
            return None
        if max(np.abs(lo).max(initial=0), np.abs(up).max(initial=0)) >= _LIMIT:
            return lo, up
        r, c, a, pos = self.r, self.c, self.a, self.pos
        eu_rows = self.has_up[r]
        el_rows = self.has_lo[r]
        for _ in range(rounds):
            lo_c, up_c = lo[c], up[c]
            at_min = np.where(pos, a * lo_c, a * up_c)
            at_max = np.where(pos, a * up_c, a * lo_c)
            minact = self.Apos @ lo + self.Aneg @ up
            maxact = self.Apos @ up + self.Aneg @ lo
            if (self.has_up & (minact > self.rup)).any() or (self.has_lo & (maxact < self.rlo)).any():
                return None
            new_up = np.full(len(a), _BIG, dtype=np.int64)
            new_lo = np.full(len(a), -_BIG, dtype=np.int64)
            # a_j x_j <= up_i - (minact_i - own contribution)
            s = self.rup[r] - (minact[r] - at_min)
            q = np.where(pos, s // np.where(pos, a, 1), -((-s) // np.where(pos, 1, a)))
            new_up = np.where(eu_rows & pos, q, new_up)
            new_lo = np.where(eu_rows & ~pos, q, new_lo)
            # a_j x_j >= lo_i - (maxact_i - own contribution)
            t = self.rlo[r] - (maxact[r] - at_max)
            q = np.where(pos, -((-t) // np.where(pos, a, 1)), t // np.where(pos, 1, a))
            new_lo = np.where(el_rows & pos, np.maximum(new_lo, q), new_lo)
            new_up = np.where(el_rows & ~pos, np.minimum(new_up, q), new_up)
            col_up = np.minimum.reduceat(new_up, self.starts)
            col_lo = np.maximum.reduceat(new_lo, self.starts)
            up2 = up.copy()
            lo2 = lo.copy()
            up2[self.cols] = np.minimum(up[self.cols], col_up)
            lo2[self.cols] = np.maximum(lo[self.cols], col_lo)
            if (lo2 > up2).any():
                return None
            if (up2 == up).all() and (lo2 == lo).all():
                break
            lo, up = lo2, up2
        return lo, up
