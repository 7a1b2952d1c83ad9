"""Exact linear programming over the rationals.

Dense-tableau two-phase simplex with Bland's rule. All arithmetic uses
``fractions.Fraction``, so optimal values, primal points and dual
multipliers come back exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    x: list[Fraction] = field(default_factory=list)
    duals_ub: list[Fraction] = field(default_factory=list)
    duals_eq: list[Fraction] = field(default_factory=list)
    pivots: int = 0
    # infeasible only: y_ub >= 0 with A_ub^T y_ub + A_eq^T y_eq >= 0 and b.y < 0
    farkas_ub: list[Fraction] = field(default_factory=list)
    farkas_eq: list[Fraction] = field(default_factory=list)


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int], ncols: int):
        self.T = rows  # each row has ncols entries followed by the rhs
        self.basis = basis
        self.ncols = ncols
        self.z: list[Fraction] = []
        self.pivots = 0

    def set_objective(self, cost: Sequence[Fraction]) -> None:
        # z_j = c_B B^-1 A_j - c_j (maximisation; optimal when all z_j >= 0)
        z = [-c for c in cost] + [Fraction(0)]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.T[i]
                for j, a in enumerate(row):
                    if a:
                        z[j] += cb * a
        self.z = z

    def pivot(self, r: int, col: int) -> None:
        row = self.T[r]
        p = row[col]
        if p != 1:
            row = [a / p for a in row]
            self.T[r] = row
        nz = [j for j, a in enumerate(row) if a]
        for i, other in enumerate(self.T):
            f = other[col]
            if i != r and f:
                for j in nz:
                    other[j] -= f * row[j]
        f = self.z[col]
        if f:
            for j in nz:
                self.z[j] -= f * row[j]
        self.basis[r] = col
        self.pivots += 1

    def run(self, allowed: Sequence[bool]) -> str:
        while True:
            col = next((j for j in range(self.ncols) if allowed[j] and self.z[j] < 0), None)
            if col is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.T):
                a = row[col]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], col)


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Maximise ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``.

    Duals satisfy ``y_ub >= 0`` and ``A_ub^T y_ub + A_eq^T y_eq >= c`` at an
    optimum, with ``b.y`` equal to the optimal value.
    """
    F = Fraction
    c = [F(v) for v in c]
    n = len(c)
    rows_in = [([F(a) for a in r], F(b), "ub") for r, b in zip(A_ub, b_ub)]
    rows_in += [([F(a) for a in r], F(b), "eq") for r, b in zip(A_eq, b_eq)]
    if len(A_ub) != len(b_ub) or len(A_eq) != len(b_eq):
        raise ValueError("constraint matrix and rhs lengths differ")
    for r, _, _ in rows_in:
        if len(r) != n:
            raise ValueError("constraint row length does not match objective")
    m = len(rows_in)
    n_slack = len(A_ub)

    # columns: x (n) | slacks (one per ub row) | artificials (as needed)
    sign = []
    art_rows = []
    for i, (r, b, kind) in enumerate(rows_in):
        s = -1 if b < 0 else 1
        sign.append(s)
        # a slack can start basic only on an ub row with nonnegative rhs
        if kind == "eq" or s < 0:
            art_rows.append(i)
    n_art = len(art_rows)
    ncols = n + n_slack + n_art
    art_col = {i: n + n_slack + k for k, i in enumerate(art_rows)}

    T = []
    basis = []
    for i, (r, b, kind) in enumerate(rows_in):
        s = sign[i]
        row = [s * a for a in r] + [F(0)] * (n_slack + n_art) + [s * b]
        if kind == "ub":
            row[n + i] = F(s)
        if i in art_col:
            row[art_col[i]] = F(1)
            basis.append(art_col[i])
        else:
            basis.append(n + i)
        T.append(row)
    tab = _Tableau(T, basis, ncols)

    if n_art:
        cost1 = [F(0)] * (n + n_slack) + [F(-1)] * n_art
        tab.set_objective(cost1)
        tab.run([True] * ncols)
        if tab.z[-1] != 0:
            # phase-one duals; artificial columns carry cost -1
            y = [
                tab.z[art_col[i]] - 1 if i in art_col else tab.z[n + i]
                for i in range(m)
            ]
            y = [yi * sign[i] for i, yi in enumerate(y)]
            return LPResult(
                INFEASIBLE, pivots=tab.pivots, farkas_ub=y[:n_slack], farkas_eq=y[n_slack:]
            )
        # drive zero-level artificials out of the basis where possible
        for r in range(m):
            if tab.basis[r] >= n + n_slack:
                col = next((j for j in range(n + n_slack) if tab.T[r][j] != 0), None)
                if col is not None:
                    tab.pivot(r, col)

    cost2 = c + [F(0)] * (n_slack + n_art)
    tab.set_objective(cost2)
    allowed = [True] * (n + n_slack) + [False] * n_art
    status = tab.run(allowed)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=tab.pivots)

    x = [F(0)] * ncols
    for i, b in enumerate(tab.basis):
        x[b] = tab.T[i][-1]
    # the slack column of a ub row reads off its dual whatever the row sign;
    # eq rows only have their artificial column
    y = [
        tab.z[n + i] if kind == "ub" else tab.z[art_col[i]] * sign[i]
        for i, (_, _, kind) in enumerate(rows_in)
    ]
    return LPResult(
        OPTIMAL,
        value=tab.z[-1],
        x=x[:n],
        duals_ub=y[:n_slack],
        duals_eq=y[n_slack:],
        pivots=tab.pivots,
    )
