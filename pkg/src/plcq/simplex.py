"""Two-phase primal simplex over exact rationals.

Solves  max/min  c.x  s.t.  A x <= b,  E x = d,  x free in R^n.

Free variables are split x = u - w, inequalities get slacks, and phase one
uses artificial variables.  Pivoting follows Bland's rule, so the method
terminates on every input and every number stays an exact Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Vec, is_zero

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    point: Vec | None = None
    ray: Vec | None = None


class _Tableau:
    def __init__(self, ncols: int):
        self.rows: list[list[Fraction]] = []  # each row: ncols coefficients + rhs
        self.basis: list[int] = []
        self.ncols = ncols

    def pivot(self, r: int, j: int) -> None:
        row = self.rows[r]
        inv = 1 / row[j]
        self.rows[r] = row = [x * inv for x in row]
        for i, other in enumerate(self.rows):
            if i != r and other[j] != 0:
                f = other[j]
                self.rows[i] = [x - f * y for x, y in zip(other, row)]
        self.basis[r] = j

    def reduced_costs(self, cost: list[Fraction]) -> list[Fraction]:
        zc = list(cost)
        for i, bi in enumerate(self.basis):
            cb = cost[bi]
            if cb != 0:
                row = self.rows[i]
                for j in range(self.ncols):
                    if row[j] != 0:
                        zc[j] -= cb * row[j]
        return zc

    def objective_value(self, cost: list[Fraction]) -> Fraction:
        return sum((cost[bi] * self.rows[i][-1] for i, bi in enumerate(self.basis)),
                   Fraction(0))

    def run(self, cost: list[Fraction]) -> int | None:
        """Bland iterations until optimal (None) or unbounded (entering col)."""
        while True:
            zc = self.reduced_costs(cost)
            enter = next((j for j in range(self.ncols) if zc[j] > 0), None)
            if enter is None:
                return None
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                if row[enter] > 0:
                    ratio = row[-1] / row[enter]
                    if best is None or ratio < best or (
                            ratio == best and self.basis[i] < self.basis[leave]):
                        best = ratio
                        leave = i
            if leave is None:
                return enter
            self.pivot(leave, enter)


def lp_solve(objective: Vec, rows, eqs=(), sense: str = "max") -> LPResult:
    """Exact LP over {x : a.x <= b for (a,b) in rows, e.x = d for (e,d) in eqs}."""
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    n = len(objective)
    flip = -1 if sense == "min" else 1
    c = [flip * q for q in objective]

    sys_rows = []
    nslack = 0
    for a, b in rows:
        if len(a) != n:
            raise ValueError("dimension mismatch in constraint row")
        if is_zero(a):
            if b < 0:
                return LPResult(INFEASIBLE)
            continue
        sys_rows.append((a, b, nslack))
        nslack += 1
    sys_eqs = []
    for e, d in eqs:
        if len(e) != n:
            raise ValueError("dimension mismatch in equality row")
        if is_zero(e):
            if d != 0:
                return LPResult(INFEASIBLE)
            continue
        sys_eqs.append((e, d))

    ncols = 2 * n + nslack
    m = len(sys_rows) + len(sys_eqs)
    tab = _Tableau(ncols + m)  # phase-1 artificials occupy the last m columns

    def build_row(a: Vec, rhs: Fraction, slack: int | None) -> list[Fraction]:
        row = [Fraction(0)] * (ncols + m + 1)
        for j, q in enumerate(a):
            row[j] = q
            row[n + j] = -q
        if slack is not None:
            row[2 * n + slack] = Fraction(1)
        row[-1] = rhs
        return row

    k = 0
    for a, b, s in sys_rows:
        row = build_row(a, b, s)
        if b < 0:
            row = [-x for x in row]
        row[ncols + k] = Fraction(1)
        tab.rows.append(row)
        tab.basis.append(ncols + k)
        k += 1
    for e, d in sys_eqs:
        row = build_row(e, d, None)
        if d < 0:
            row = [-x for x in row]
        row[ncols + k] = Fraction(1)
        tab.rows.append(row)
        tab.basis.append(ncols + k)
        k += 1

    # phase 1: maximize minus the sum of artificials
    art_cost = [Fraction(0)] * (ncols + m)
    for j in range(ncols, ncols + m):
        art_cost[j] = Fraction(-1)
    tab.run(art_cost)
    if tab.objective_value(art_cost) != 0:
        return LPResult(INFEASIBLE)

    # drive leftover artificials out of the basis, dropping null rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= ncols:
            j = next((j for j in range(ncols) if tab.rows[i][j] != 0), None)
            if j is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, j)
        i += 1

    # phase 2 on the real objective
    tab.rows = [row[:ncols] + [row[-1]] for row in tab.rows]
    tab.ncols = ncols
    cost = [Fraction(0)] * ncols
    for j in range(n):
        cost[j] = c[j]
        cost[n + j] = -c[j]

    enter = tab.run(cost)

    def current_point() -> Vec:
        full = [Fraction(0)] * ncols
        for i, bi in enumerate(tab.basis):
            full[bi] = tab.rows[i][-1]
        return tuple(full[j] - full[n + j] for j in range(n))

    if enter is not None:
        direction = [Fraction(0)] * ncols
        direction[enter] = Fraction(1)
        for i, bi in enumerate(tab.basis):
            direction[bi] = -tab.rows[i][enter]
        # the ray improves the stated objective (increases a max, decreases a min)
        ray = tuple(direction[j] - direction[n + j] for j in range(n))
        return LPResult(UNBOUNDED, point=current_point(), ray=ray)

    value = flip * tab.objective_value(cost)
    return LPResult(OPTIMAL, value=value, point=current_point())


def lp_feasible(rows, eqs, n: int) -> Vec | None:
    """A feasible point of the system, or None."""
    res = lp_solve(tuple(Fraction(0) for _ in range(n)), rows, eqs)
    return res.point if res.status == OPTIMAL else None
