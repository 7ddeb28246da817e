"""Exact rational primal simplex (Bland's rule) for max c.x, A x <= b, x >= 0, b >= 0."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class LPError(RuntimeError):
    pass


@dataclass
class LPSolution:
    optimum: Fraction
    x: list[Fraction]
    dual: list[Fraction]
    pivots: int


def maximize(
    c: list[Fraction],
    rows: list[dict[int, Fraction]],
    b: list[Fraction],
    max_pivots: int = 1_000_000,
) -> LPSolution:
    """Solve the LP from the origin, which is feasible because b >= 0.

    Rows are sparse ``{column: coefficient}`` dicts.  The tableau is kept
    sparse too; entering and leaving variables follow Bland's rule, so the
    method terminates on degenerate problems.  Raises LPError when the
    problem is unbounded.
    """
    nvar, m = len(c), len(rows)
    if any(bi < 0 for bi in b):
        raise LPError("origin must be feasible (b >= 0)")
    # columns 0..nvar-1 structural, nvar..nvar+m-1 slack
    tab = []
    for i, row in enumerate(rows):
        r = {j: Fraction(v) for j, v in row.items() if v}
        r[nvar + i] = Fraction(1)
        tab.append(r)
    rhs = [Fraction(x) for x in b]
    # reduced costs for maximisation: pick a column with positive cost
    cost = {j: Fraction(v) for j, v in enumerate(c) if v}
    obj = Fraction(0)
    basis = [nvar + i for i in range(m)]
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(tab):
        for j in r:
            col_rows.setdefault(j, set()).add(i)

    pivots = 0
    while True:
        enter = min((j for j, v in cost.items() if v > 0), default=None)
        if enter is None:
            break
        best = None
        for i in col_rows.get(enter, ()):
            a = tab[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise LPError("LP is unbounded")
        i = best[1]
        pivots += 1
        if pivots > max_pivots:
            raise LPError("pivot limit reached")

        prow = tab[i]
        piv = prow[enter]
        if piv != 1:
            for j in prow:
                prow[j] /= piv
            rhs[i] /= piv
        for k in list(col_rows[enter]):
            if k == i:
                continue
            r = tab[k]
            f = r[enter]
            for j, v in prow.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    if j not in r:
                        col_rows.setdefault(j, set()).add(k)
                    r[j] = nv
                elif j in r:
                    del r[j]
                    col_rows[j].discard(k)
            rhs[k] -= f * rhs[i]
        f = cost.get(enter, 0)
        for j, v in prow.items():
            nv = cost.get(j, 0) - f * v
            if nv:
                cost[j] = nv
            else:
                cost.pop(j, None)
        obj += f * rhs[i]
        basis[i] = enter

    x = [Fraction(0)] * nvar
    for i, j in enumerate(basis):
        if j < nvar:
            x[j] = rhs[i]
    # reduced cost of slack i is -y_i
    dual = [-cost.get(nvar + i, Fraction(0)) for i in range(m)]
    return LPSolution(obj, x, dual, pivots)
