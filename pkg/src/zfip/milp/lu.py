"""Exact sparse LU factorization of a square rational matrix.

Gaussian elimination with Markowitz pivot selection: column singletons
first, then row singletons, then the entry minimizing
``(row count - 1) * (column count - 1)``.  Ties are broken by index, so the
factorization is deterministic.
"""

from __future__ import annotations

from fractions import Fraction


class SingularMatrix(ArithmeticError):
    pass


class SparseLU:
    """Factor a matrix given as ``m`` sparse columns ``{row: value}``.

    Supports ``solve(b)`` for ``B x = b`` and ``solve_transpose(c)`` for
    ``B^T y = c``.  Vectors are dense lists; ``x`` is indexed by column
    position and ``y`` by row.
    """

    def __init__(self, columns: list[dict[int, Fraction]], m: int):
        if len(columns) != m:
            raise ValueError("basis must be square")
        self.m = m
        rows: list[dict[int, Fraction]] = [dict() for _ in range(m)]
        col_rows: list[set[int]] = [set() for _ in range(m)]
        for p, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][p] = v
                    col_rows[p].add(i)
        active_cols = set(range(m))
        # steps: (pivot row, pivot col, pivot value, remaining row entries, multipliers)
        steps: list[tuple[int, int, Fraction, dict[int, Fraction], list[tuple[int, Fraction]]]] = []
        ucol: list[list[tuple[int, Fraction]]] = [[] for _ in range(m)]

        col_single = sorted(p for p in range(m) if len(col_rows[p]) == 1)
        row_single = sorted(i for i in range(m) if len(rows[i]) == 1)
        done_rows = set()

        for _ in range(m):
            piv = None
            while col_single:
                p = col_single.pop()
                if p in active_cols and len(col_rows[p]) == 1:
                    piv = (next(iter(col_rows[p])), p)
                    break
            if piv is None:
                while row_single:
                    i = row_single.pop()
                    if i not in done_rows and len(rows[i]) == 1:
                        piv = (i, next(iter(rows[i])))
                        break
            if piv is None:
                best = None
                for p in sorted(active_cols):
                    cc = len(col_rows[p]) - 1
                    if cc < 0:
                        raise SingularMatrix("empty column in basis")
                    for i in sorted(col_rows[p]):
                        key = ((len(rows[i]) - 1) * cc, p, i)
                        if best is None or key < best:
                            best = key
                    if best is not None and best[0] == 0:
                        break
                if best is None:
                    raise SingularMatrix("no pivot available")
                piv = (best[2], best[1])
            i, p = piv
            urow = rows[i]
            pv = urow.pop(p)
            done_rows.add(i)
            active_cols.discard(p)
            for q in urow:
                col_rows[q].discard(i)
            col_rows[p].discard(i)
            mults = []
            for r in sorted(col_rows[p]):
                row_r = rows[r]
                mult = row_r.pop(p) / pv
                mults.append((r, mult))
                for q, val in urow.items():
                    nv = row_r.get(q, 0) - mult * val
                    if nv:
                        if q not in row_r:
                            col_rows[q].add(r)
                        row_r[q] = nv
                    elif q in row_r:
                        del row_r[q]
                        col_rows[q].discard(r)
                        if len(col_rows[q]) == 1:
                            col_single.append(q)
                if len(row_r) == 1:
                    row_single.append(r)
                elif not row_r:
                    raise SingularMatrix("row eliminated to zero")
            col_rows[p].clear()
            for q, val in urow.items():
                ucol[q].append((i, val))
                if len(col_rows[q]) == 1:
                    col_single.append(q)
            steps.append((i, p, pv, urow, mults))
        self._steps = steps
        self._ucol = ucol

    def solve(self, b) -> list[Fraction]:
        work = list(b)
        for i, _, _, _, mults in self._steps:
            wi = work[i]
            if wi:
                for r, mult in mults:
                    work[r] -= mult * wi
        x = [Fraction(0)] * self.m
        for i, p, pv, urow, _ in reversed(self._steps):
            acc = work[i]
            for q, val in urow.items():
                xq = x[q]
                if xq:
                    acc -= val * xq
            x[p] = acc / pv if acc else Fraction(0)
        return x

    def solve_transpose(self, c) -> list[Fraction]:
        w = [Fraction(0)] * self.m
        for i, p, pv, _, _ in self._steps:
            acc = c[p]
            for r, val in self._ucol[p]:
                wr = w[r]
                if wr:
                    acc -= wr * val
            w[i] = acc / pv if acc else Fraction(0)
        for i, _, _, _, mults in reversed(self._steps):
            acc = w[i]
            for r, mult in mults:
                wr = w[r]
                if wr:
                    acc -= mult * wr
            w[i] = acc
        return w
