"""Exact-rational linear programming (dense two-phase simplex, Bland's rule).

Small and exact rather than fast: tableaux of a few hundred columns with
Fraction entries, which is all the statistics bounds need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None
    x: list[Fraction] | None
    basis: list[int] | None

    def __bool__(self) -> bool:
        return self.status == "optimal"


def _pivot(T: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = T[row][col]
    T[row] = [v / piv for v in T[row]]
    for r in range(len(T)):
        if r != row and T[r][col]:
            factor = T[r][col]
            T[r] = [a - factor * b for a, b in zip(T[r], T[row])]
    basis[row] = col


def _simplex(T: list[list[Fraction]], basis: list[int], cost: list[Fraction]) -> str:
    """Maximise cost over the system in T (rows = equalities, last col rhs).

    The cost row is reduced in place; Bland's rule guarantees termination.
    """
    ncols = len(T[0]) - 1
    # reduce cost over current basis
    for r, b in enumerate(basis):
        if cost[b]:
            factor = cost[b]
            for j in range(len(cost)):
                cost[j] -= factor * T[r][j]
    while True:
        col = next((j for j in range(ncols) if cost[j] > 0), None)
        if col is None:
            return "optimal"
        best_row, best_ratio = None, None
        for r in range(len(T)):
            if T[r][col] > 0:
                ratio = T[r][-1] / T[r][col]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[r] < basis[best_row])
                ):
                    best_row, best_ratio = r, ratio
        if best_row is None:
            return "unbounded"
        _pivot(T, basis, best_row, col)
        factor = cost[col]
        for j in range(len(cost)):
            cost[j] -= factor * T[best_row][j]


def solve_lp(
    objective: Sequence,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    maximize: bool = True,
) -> LPResult:
    """Exact LP over x >= 0: optimise objective . x subject to
    A_eq x = b_eq and A_ub x <= b_ub."""
    nx = len(objective)
    obj = [Fraction(v) for v in objective]
    if not maximize:
        obj = [-v for v in obj]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for row, b in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in row])
        rhs.append(Fraction(b))
    nslack = len(list(A_ub))
    for i, (row, b) in enumerate(zip(A_ub, b_ub)):
        r = [Fraction(v) for v in row] + [Fraction(0)] * nslack
        r[nx + i] = Fraction(1)
        rows.append(r)
        rhs.append(Fraction(b))
    ncols = nx + nslack
    # pad equality rows with slack zeros, normalise rhs signs
    T = []
    for r, b in zip(rows, rhs):
        r = list(r) + [Fraction(0)] * (ncols - len(r))
        if b < 0:
            r = [-v for v in r]
            b = -b
        T.append(r + [b])
    m = len(T)
    # phase 1: artificial basis
    for i, row in enumerate(T):
        row[-1:-1] = [Fraction(int(i == j)) for j in range(m)]
    basis = [ncols + i for i in range(m)]
    phase1 = [Fraction(0)] * ncols + [Fraction(-1)] * m + [Fraction(0)]
    _simplex(T, basis, phase1)
    # the tableau cost row stores the negated objective value in its rhs slot
    if phase1[-1] > 0:
        return LPResult("infeasible", None, None, None)
    # drive artificials out of the basis; rows that resist are zero rows
    for r in range(m):
        if basis[r] >= ncols:
            col = next((j for j in range(ncols) if T[r][j] != 0), None)
            if col is not None:
                _pivot(T, basis, r, col)
    keep = [r for r in range(m) if basis[r] < ncols]
    T = [[T[r][j] for j in range(ncols)] + [T[r][-1]] for r in keep]
    basis = [basis[r] for r in keep]
    cost = obj + [Fraction(0)] * nslack + [Fraction(0)]
    status = _simplex(T, basis, cost)
    if status != "optimal":
        return LPResult(status, None, None, None)
    x = [Fraction(0)] * ncols
    for r, b in enumerate(basis):
        x[b] = T[r][-1]
    value = sum(o * v for o, v in zip(obj, x[:nx]))
    if not maximize:
        value = -value
    return LPResult("optimal", value, x[:nx], list(basis))


# ---------------------------------------------------------------------------
# Optimisation over statistics hulls


def lp_max(
    points: Sequence[Sequence[int]],
    objective: Sequence,
    extra_constraints: Sequence[tuple[Sequence, object]] = (),
    hull: str = "dominated",
) -> dict:
    """Exact maximum of objective . x over a hull of the given points.

    hull="convex" optimises over convex combinations of the points;
    hull="dominated" optimises over the downward closure of that hull
    (x >= 0, x <= P·lambda componentwise), which is the convex hull of
    all feasible statistics when feasibility is closed under deleting
    points.  Extra constraints are rows (coeffs, rhs) meaning
    coeffs . x <= rhs.  Returns the optimum, the witness x and the
    convex weights.
    """
    pts = [list(map(Fraction, p)) for p in points]
    if not pts:
        raise ValueError("empty hull")
    d = len(pts[0])
    npts = len(pts)
    obj = [Fraction(v) for v in objective]
    if hull == "convex":
        # variables: lambda_j
        objective_l = [sum(o * p[i] for i, o in enumerate(obj)) for p in pts]
        A_eq = [[1] * npts]
        b_eq = [1]
        A_ub = []
        b_ub = []
        for coeffs, rhs in extra_constraints:
            coeffs = [Fraction(v) for v in coeffs]
            A_ub.append([sum(c * p[i] for i, c in enumerate(coeffs)) for p in pts])
            b_ub.append(Fraction(rhs))
        res = solve_lp(objective_l, A_eq, b_eq, A_ub, b_ub)
        if not res:
            return {"status": res.status}
        lam = res.x
        witness = [sum(lam[j] * pts[j][i] for j in range(npts)) for i in range(d)]
        return {
            "status": "optimal",
            "value": res.value,
            "witness": witness,
            "weights": lam,
            "basis": res.basis,
        }
    if hull != "dominated":
        raise ValueError("hull must be 'convex' or 'dominated'")
    # variables: x_0..x_{d-1}, lambda_0..lambda_{npts-1}
    nvars = d + npts
    objective_full = obj + [Fraction(0)] * npts
    A_eq = [[0] * d + [1] * npts]
    b_eq = [1]
    A_ub = []
    b_ub = []
    for i in range(d):  # x_i - sum_j p_j[i] lambda_j <= 0
        row = [Fraction(0)] * nvars
        row[i] = Fraction(1)
        for j in range(npts):
            row[d + j] = -pts[j][i]
        A_ub.append(row)
        b_ub.append(Fraction(0))
    for coeffs, rhs in extra_constraints:
        row = [Fraction(v) for v in coeffs] + [Fraction(0)] * npts
        A_ub.append(row)
        b_ub.append(Fraction(rhs))
    res = solve_lp(objective_full, A_eq, b_eq, A_ub, b_ub)
    if not res:
        return {"status": res.status}
    return {
        "status": "optimal",
        "value": res.value,
        "witness": res.x[:d],
        "weights": res.x[d:],
        "basis": res.basis,
    }


def in_convex_hull(point: Sequence, others: Sequence[Sequence]) -> bool:
    """Exact membership of a point in the convex hull of the others."""
    pts = [list(map(Fraction, p)) for p in others]
    if not pts:
        return False
    d = len(pts[0])
    target = [Fraction(v) for v in point]
    A_eq = [[p[i] for p in pts] for i in range(d)]
    A_eq.append([1] * len(pts))
    b_eq = target + [Fraction(1)]
    res = solve_lp([0] * len(pts), A_eq, b_eq)
    return bool(res)


def extremal_points(points: Sequence[Sequence]) -> list[int]:
    """Indices of points that are not convex combinations of the others."""
    out = []
    for i, p in enumerate(points):
        others = [q for j, q in enumerate(points) if j != i]
        if not in_convex_hull(p, others):
            out.append(i)
    return out
