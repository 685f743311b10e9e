"""Exact maximisation over simplex grids by branch and bound.

The two pattern kinds are 'simplex' (no upward simplex of k cells; the
union of the chosen cells is then combinatorial-line-free) and
'isosceles' (k = 3 only; the cell union is then geometric-line-free).
Search order is descending weight with lexicographic tie-break; the
bound is the chosen weight plus the weight of undecided, unexcluded
cells, tightened for the isosceles kind by the one-cell-per-diagonal
relaxation.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterable

from .cube import cell_size, simplex_points, simplex_size
from .verify import InternalCheckError, is_fujimura, is_isosceles_free
from .lp import lp_max  # noqa: F401  (re-exported: the LP lives in its own module)

__all__ = [
    "SimplexProblem", "OptResult", "branch_and_bound", "max_fujimura",
    "max_moser_b", "props_upper_bound", "fujimura_max_general", "lp_max",
]


@dataclass
class SimplexProblem:
    n: int
    k: int
    kind: str  # "simplex" | "isosceles"
    weighted: bool = True
    fixed_in: frozenset = frozenset()
    fixed_out: frozenset = frozenset()
    order: str = "desc"  # "desc" | "asc" | "lex" (branching order)

    points: list = field(init=False)
    weights: list = field(init=False)
    constraints: list = field(init=False)
    point_constraints: list = field(init=False)
    diagonal_of: list | None = field(init=False, default=None)

    def __post_init__(self):
        if self.kind not in ("simplex", "isosceles"):
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if self.kind == "isosceles" and self.k != 3:
            raise ValueError("the isosceles kind is defined for k = 3")
        pts = list(simplex_points(self.n, self.k))
        weights = {p: cell_size(p) if self.weighted else 1 for p in pts}
        key = {
            "desc": lambda p: (-weights[p], p),
            "asc": lambda p: (weights[p], p),
            "lex": lambda p: p,
        }[self.order]
        pts.sort(key=key)
        index = {p: i for i, p in enumerate(pts)}
        self.points = pts
        self.weights = [weights[p] for p in pts]
        cons: set[tuple[int, ...]] = set()
        if self.kind == "simplex":
            for p in pts:
                for r in range(1, p[0] + 1):
                    base = (p[0] - r,) + p[1:]
                    members = [p] + [
                        base[:j] + (base[j] + r,) + base[j + 1 :]
                        for j in range(1, self.k)
                    ]
                    cons.add(tuple(sorted(index[m] for m in members)))
        else:
            for head in pts:
                a, bm, c = head
                for total in range(1, bm + 1):
                    b = bm - total
                    for r in range(total // 2 + 1):
                        s = total - r
                        f1 = (a + r, b, c + s)
                        f2 = (a + s, b, c + r)
                        if f1 in index and f2 in index:
                            ids = sorted({index[head], index[f1], index[f2]})
                            cons.add(tuple(ids))
            self.diagonal_of = [p[2] - p[0] + self.n for p in pts]
        self.constraints = sorted(cons)
        self.point_constraints = [[] for _ in pts]
        for ci, con in enumerate(self.constraints):
            for i in con:
                self.point_constraints[i].append(ci)


@dataclass
class OptResult:
    value: int
    cells: frozenset
    exact: bool
    nodes: int
    bound_gap: int = 0
    all_optima: list | None = None


def branch_and_bound(
    problem: SimplexProblem,
    node_budget: int | None = None,
    collect_all: bool = False,
    seed_cells: Iterable | None = None,
) -> OptResult:
    pts = problem.points
    weights = problem.weights
    npts = len(pts)
    cons = problem.constraints
    point_cons = problem.point_constraints
    con_size = [len(c) for c in cons]
    index = {p: i for i, p in enumerate(pts)}

    IN, OUT, UNDEC = 1, -1, 0
    status = [UNDEC] * npts
    chosen_in_con = [0] * len(cons)
    excluded = [False] * npts

    diag_of = problem.diagonal_of
    diag_points: list[list[int]] = []
    if diag_of is not None:
        diag_points = [[] for _ in range(2 * problem.n + 1)]
        for i, d in enumerate(diag_of):
            diag_points[d].append(i)  # descending weight within each diagonal

    total_weight = sum(weights)
    state = {"remaining": total_weight, "current": 0, "excl": 0,
             "best": -1, "nodes": 0, "aborted": False}
    best_cells: list[frozenset | None] = [None]
    all_best: list[frozenset] = []

    def record(cells: frozenset, value: int):
        if value > state["best"]:
            state["best"] = value
            best_cells[0] = cells
            all_best.clear()
            all_best.append(cells)
        elif collect_all and value == state["best"] and cells not in all_best:
            all_best.append(cells)

    def set_status(i: int, st: int, trail: list):
        status[i] = st
        state["remaining"] -= weights[i]
        if excluded[i]:
            state["excl"] -= weights[i]
        trail.append(("status", i))
        if st == IN:
            state["current"] += weights[i]
            for ci in point_cons[i]:
                chosen_in_con[ci] += 1

    def exclude(i: int, trail: list):
        if not excluded[i] and status[i] == UNDEC:
            excluded[i] = True
            state["excl"] += weights[i]
            trail.append(("excl", i))

    def undo(trail: list):
        for kind, i in reversed(trail):
            if kind == "status":
                st = status[i]
                status[i] = UNDEC
                state["remaining"] += weights[i]
                if excluded[i]:
                    state["excl"] += weights[i]
                if st == IN:
                    state["current"] -= weights[i]
                    for ci in point_cons[i]:
                        chosen_in_con[ci] -= 1
            else:
                excluded[i] = False
                state["excl"] -= weights[i]

    def propagate(i: int, trail: list) -> bool:
        """Force out the last open member of nearly complete constraints."""
        for ci in point_cons[i]:
            con = cons[ci]
            chosen = chosen_in_con[ci]
            if chosen == con_size[ci]:
                return False
            if chosen == con_size[ci] - 1:
                open_member = None
                violated = True
                for other in con:
                    if status[other] == UNDEC:
                        open_member = other
                        violated = False
                    elif status[other] == OUT:
                        violated = False
                if violated:
                    return False
                if open_member is not None:
                    exclude(open_member, trail)
        return True

    def upper_bound() -> int:
        simple = state["current"] + state["remaining"] - state["excl"]
        if diag_of is None:
            return simple
        total = state["current"]
        for dpts in diag_points:
            has_in = False
            extra = 0
            for i in dpts:
                if status[i] == IN:
                    has_in = True
                    break
                if status[i] == UNDEC and not excluded[i] and weights[i] > extra:
                    extra = weights[i]
            if not has_in:
                total += extra
        return min(simple, total)

    # fixed points and incumbent seeding ---------------------------------
    init_trail: list = []
    feasible_root = True
    for p in problem.fixed_out:
        set_status(index[tuple(p)], OUT, init_trail)
    for p in problem.fixed_in:
        i = index[tuple(p)]
        if status[i] == OUT or excluded[i]:
            feasible_root = False
            break
        set_status(i, IN, init_trail)
        if not propagate(i, init_trail):
            feasible_root = False
            break

    if not problem.fixed_in and not problem.fixed_out:
        sel: list[int] = []
        cnt = [0] * len(cons)
        for i in range(npts):
            if all(cnt[ci] < con_size[ci] - 1 for ci in point_cons[i]):
                sel.append(i)
                for ci in point_cons[i]:
                    cnt[ci] += 1
        record(frozenset(pts[i] for i in sel), sum(weights[i] for i in sel))
        if seed_cells is not None:
            cells = frozenset(tuple(p) for p in seed_cells)
            record(cells, sum(weights[index[p]] for p in cells))

    def dfs(start: int):
        if state["aborted"]:
            return
        state["nodes"] += 1
        if node_budget is not None and state["nodes"] > node_budget:
            state["aborted"] = True
            return
        ub = upper_bound()
        if ub < state["best"] or (not collect_all and ub == state["best"]):
            return
        i = start
        while i < npts and (status[i] != UNDEC or excluded[i]):
            i += 1
        if i >= npts:
            cells = frozenset(pts[j] for j in range(npts) if status[j] == IN)
            record(cells, state["current"])
            return
        trail: list = []
        set_status(i, IN, trail)
        if propagate(i, trail):
            dfs(i + 1)
        undo(trail)
        if state["aborted"]:
            return
        trail = []
        set_status(i, OUT, trail)
        dfs(i + 1)
        undo(trail)

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, npts * 4 + 1000))
    try:
        if feasible_root:
            dfs(0)
    finally:
        sys.setrecursionlimit(old_limit)

    gap = max(0, total_weight - state["best"]) if state["aborted"] else 0
    return OptResult(
        value=state["best"],
        cells=best_cells[0] if best_cells[0] is not None else frozenset(),
        exact=not state["aborted"],
        nodes=state["nodes"],
        bound_gap=gap,
        all_optima=list(all_best) if collect_all else None,
    )


def max_fujimura(n: int, k: int = 3, node_budget: int | None = None) -> OptResult:
    """Exact maximum-weight triangle-free subset of the (n,k) grid."""
    problem = SimplexProblem(n, k, "simplex")
    seed = None
    if k == 3 and n <= 999:
        try:
            from .construct import dhj_cells

            seed = dhj_cells(n)
        except (ValueError, InternalCheckError):
            seed = None
    res = branch_and_bound(problem, node_budget=node_budget, seed_cells=seed)
    if res.exact and not is_fujimura(res.cells, n):
        raise InternalCheckError("optimizer returned a set with a simplex")
    weight = sum(cell_size(p) for p in res.cells)
    if weight != res.value:
        raise InternalCheckError("optimizer value does not match its witness")
    return res


def max_moser_b(
    n: int, node_budget: int | None = None, collect_all: bool = False
) -> OptResult:
    """Exact maximum-weight isosceles-free subset of the (n,3) grid."""
    problem = SimplexProblem(n, 3, "isosceles")
    res = branch_and_bound(
        problem, node_budget=node_budget, collect_all=collect_all
    )
    if res.exact and not is_isosceles_free(res.cells):
        raise InternalCheckError("optimizer returned a set with an isosceles triple")
    if sum(cell_size(p) for p in res.cells) != res.value:
        raise InternalCheckError("optimizer value does not match its witness")
    return res


def props_upper_bound(n: int) -> int:
    """Sum over diagonals c - a = h of the largest cell weight on the
    diagonal; an upper bound for every isosceles-free cell union."""
    best: dict[int, int] = {}
    for p in simplex_points(n, 3):
        h = p[2] - p[0]
        w = cell_size(p)
        if w > best.get(h, 0):
            best[h] = w
    return sum(best.values())


def fujimura_max_general(n: int, k: int, weighted: bool = False) -> int:
    """Exact triangle-free maximum on small grids (any k)."""
    if simplex_size(n, k) > 200:
        raise ValueError("grid too large for the general-k exact search")
    problem = SimplexProblem(n, k, "simplex", weighted=weighted)
    return branch_and_bound(problem).value
