from fractions import Fraction
from itertools import combinations

import pytest

from hjm.cube import cell_size, simplex_points
from hjm.lp import extremal_points, in_convex_hull, lp_max, solve_lp
from hjm.optimize import (
    OptResult,
    SimplexProblem,
    branch_and_bound,
    fujimura_max_general,
    max_fujimura,
    max_moser_b,
    props_upper_bound,
)
from hjm.tables import pareto4_reference
from hjm.verify import is_fujimura, is_isosceles_free


FUJIMURA_VALUES = {1: 2, 2: 6, 3: 18, 4: 52, 5: 150, 6: 450, 7: 1302, 8: 3780}
MOSER_B_VALUES = {1: 2, 2: 6, 3: 16, 4: 43, 5: 122, 6: 353, 7: 1017, 8: 2902}


@pytest.mark.parametrize("n", range(1, 9))
def test_max_fujimura_values(n):
    r = max_fujimura(n)
    assert r.exact
    assert r.value == FUJIMURA_VALUES[n]
    assert is_fujimura(r.cells, n)


@pytest.mark.parametrize("n", range(1, 9))
def test_max_moser_b_values(n):
    r = max_moser_b(n)
    assert r.exact
    assert r.value == MOSER_B_VALUES[n]
    assert is_isosceles_free(r.cells)


def test_fujimura_n0():
    assert max_fujimura(0).value == 1


def _brute(n, kind, weighted=True):
    pts = list(simplex_points(n, 3))
    best = 0
    for r in range(len(pts) + 1):
        for sub in combinations(pts, r):
            ok = is_fujimura(sub, n) if kind == "simplex" else is_isosceles_free(sub)
            if ok:
                best = max(best, sum(cell_size(p) if weighted else 1 for p in sub))
    return best


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bruteforce_agreement(n):
    assert _brute(n, "simplex") == max_fujimura(n).value
    assert _brute(n, "isosceles") == max_moser_b(n).value


def test_order_independence():
    for order in ("desc", "asc", "lex"):
        p = SimplexProblem(5, 3, "isosceles", order=order)
        assert branch_and_bound(p).value == 122
        p = SimplexProblem(5, 3, "simplex", order=order)
        assert branch_and_bound(p).value == 150


def test_props_upper_bound():
    assert props_upper_bound(2) == 8
    for n in range(1, 13):
        assert props_upper_bound(n) >= MOSER_B_VALUES.get(n, 0)
    for n in range(1, 7):
        assert props_upper_bound(n) >= max_moser_b(n).value


def test_props_asymptotic_bracket():
    import math

    for n in (50, 101, 200):
        ratio = props_upper_bound(n) / (3**n / math.sqrt(n))
        assert 1.5 <= ratio <= 3.5


def test_budget_mode():
    r = max_fujimura(8, node_budget=50)
    assert not r.exact
    assert r.bound_gap > 0
    assert r.value >= 3000  # incumbent seeded from the bundled construction


def test_fixed_points():
    p = SimplexProblem(2, 3, "simplex", fixed_out=frozenset({(1, 1, 0)}))
    r = branch_and_bound(p)
    assert r.value == 6
    assert (1, 1, 0) not in r.cells
    # forcing out both weight-2 cells of one triangle does cost weight
    p = SimplexProblem(2, 3, "simplex",
                       fixed_out=frozenset({(1, 1, 0), (1, 0, 1), (0, 1, 1)}))
    r = branch_and_bound(p)
    assert r.value == 2  # only two of the three corners fit
    p = SimplexProblem(2, 3, "simplex", fixed_in=frozenset({(1, 1, 0)}))
    r = branch_and_bound(p)
    assert (1, 1, 0) in r.cells and r.value == 6


def test_n10_unique_up_to_reflection():
    r = max_moser_b(10, collect_all=True)
    assert r.value == 24786
    opts = r.all_optima
    assert len(opts) == 2
    refl = {frozenset((c, b, a) for (a, b, c) in s) for s in opts}
    assert refl == set(map(frozenset, opts))


def test_fujimura_general():
    assert fujimura_max_general(2, 4) == 7
    assert fujimura_max_general(0, 4) == 1
    for k in (2, 3, 4, 5):
        assert fujimura_max_general(1, k) == k - 1
    # brute oracle on the tiny (1, k) grids
    for k in (2, 3, 4):
        pts = list(simplex_points(1, k))
        best = 0
        for r in range(len(pts) + 1):
            for sub in combinations(pts, r):
                if is_fujimura(sub, 1):
                    best = max(best, len(sub))
        assert fujimura_max_general(1, k) == best


# ---------------------------------------------------------------------------
# LP


def test_lp_simple():
    r = solve_lp([3, 2], A_ub=[[1, 1], [1, 0]], b_ub=[4, 2])
    assert r.value == 10
    r = solve_lp([1, 1], A_eq=[[1, 1]], b_eq=[-1])
    assert r.status == "infeasible"
    r = solve_lp([1, 0], A_ub=[[-1, 0]], b_ub=[1])
    assert r.status == "unbounded"


def test_lp_max_no_constraints_equals_point_max():
    pts = [(4, 0, 0), (3, 2, 0), (2, 4, 0), (2, 2, 1)]
    for hull in ("convex", "dominated"):
        r = lp_max(pts, [1, 2, 5], hull=hull)
        assert r["value"] == max(a + 2 * b + 5 * c for a, b, c in pts)


def test_lp_zero_objective_and_singleton():
    r = lp_max([(3, 1)], [0, 0], hull="convex")
    assert r["value"] == 0
    r = lp_max([(3, 1)], [2, 1], hull="convex")
    assert r["value"] == 7


def test_extremal_points_2d():
    pts = [(4, 0, 0), (3, 2, 0), (2, 4, 0), (2, 2, 1)]
    assert [pts[i] for i in extremal_points(pts)] == [(4, 0, 0), (2, 4, 0), (2, 2, 1)]


def test_lp_published_bound():
    pts = pareto4_reference()
    obj = [4, 6, 10, 20, 60]
    cons = [
        ([0, 0, 1, 0, 0], 12),
        ([0, 0, 0, 1, 0], 4),
        ([0, 0, 0, 0, 1], Fraction(1, 2)),
        ([0, 0, Fraction(7, 24), Fraction(3, 8), 3], 6),
    ]
    for hull in ("convex", "dominated"):
        r = lp_max(pts, obj, cons, hull=hull)
        assert r["value"] == Fraction(1016, 3)
        assert r["witness"] == [
            Fraction(17, 3), Fraction(16), Fraction(12), Fraction(4), Fraction(1, 3)
        ]
