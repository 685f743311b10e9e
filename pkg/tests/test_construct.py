import math
from fractions import Fraction
from itertools import combinations, permutations, product

import pytest

from hjm import construct as C
from hjm.cube import PointSet, Word, cell_size, sphere_members
from hjm.verify import (
    is_fujimura,
    is_isosceles_free,
    is_line_free,
    is_moser,
    statistics,
)


def test_gamma_union_full_grid():
    B = list(C.simplex_points_cells(2, 3)) if hasattr(C, "simplex_points_cells") else None
    from hjm.cube import simplex_points

    A = C.gamma_union(list(simplex_points(2, 3)), 2, 3)
    assert A.size == 9


@pytest.mark.parametrize(
    "n,expected",
    [(0, 1), (1, 2), (2, 6), (3, 18), (4, 52), (5, 150), (6, 450), (7, 1302), (8, 3780)],
)
def test_dhj_cells_weights(n, expected):
    if n == 8:
        pytest.skip("n=8 has no bundled hand construction (optimizer territory)")
    B = C.dhj_cells(n)
    assert C.simplex_weight(B) == expected
    assert is_fujimura(B, n)


def test_dhj_small_sets_line_free():
    for n in range(7):
        A = C.gamma_union(C.dhj_cells(n), n, 3)
        assert is_line_free(A)


def test_b_jn_sizes_and_triangle_freeness():
    for n in (1, 2):
        for j in range(3):
            B = C.b_jn(j, n)
            assert is_fujimura(B, n)
            assert C.simplex_weight(B) == 2 * 3 ** (n - 1)
    assert is_fujimura(C.b_jn(0, 3), 3)
    # for n = 4 the j=0 class has triangles until trimmed
    assert not is_fujimura(C.b_jn(0, 4), 4)
    assert is_fujimura(C.trimmed_b0(4), 4)


def test_trimmed_weights():
    assert C.simplex_weight(C.trimmed_b0(7)) == 1302
    assert C.simplex_weight(C.trimmed_b0(6)) == 450


def test_medium_groups_match_small_cases():
    for m, bases in [
        (3, [(2, 3, 4), (1, 3, 5), (0, 4, 5)]),
        (4, [(3, 4, 5), (2, 4, 6), (1, 5, 6), (0, 2, 10), (0, 5, 7)]),
        (5, [(4, 5, 6), (3, 5, 7), (2, 6, 7), (1, 3, 11), (1, 6, 8),
             (0, 4, 11), (0, 7, 8)]),
    ]:
        expected = set()
        for base in bases:
            expected.update(permutations(base))
        assert set(C.medium_construction(m)) == expected


def test_medium_density_99():
    d = C.medium_density(33)
    assert d >= Fraction(1, 3)


def test_reduce_digit():
    B = C.medium_construction(3)
    B1 = C.reduce_digit(B, "1")
    assert all(sum(p) == 8 for p in B1)
    assert is_fujimura(B1, 8)
    B2 = C.reduce_digit(B, "12")
    assert all(sum(p) == 7 for p in B2)
    assert is_fujimura(B2, 7)


def test_e_sets_and_x():
    sets = C.e_sets()
    for name in ("E0", "E1", "E2"):
        assert sets[name].size == 52
        assert is_line_free(sets[name])
    assert sets["X"].size == 50
    assert is_line_free(sets["X"])
    assert Word.from_text("1111", 3) not in sets["E0"]
    assert Word.from_text("2222", 3) not in sets["E0"]


def test_xyz_set():
    A = C.xyz_set()
    assert A.size == 18
    assert is_line_free(A)


def test_behrend_sets_are_progression_free():
    # generation re-verifies; exercise both the greedy and sphere paths
    assert len(C.behrend_set(100, 3)) >= 20
    assert len(C.behrend_set(30, 4)) >= 10
    # oracle agreement at tiny N
    for N in (6, 9, 12):
        brute = C.max_ap_free_bruteforce(N, 3)
        assert len(C.behrend_set(N, 3)) <= brute
        assert brute <= 2 * len(C.behrend_set(N, 3))


def test_max_ap_free_oracle_values():
    # classic values of the largest 3-AP-free subsets of {1..N}
    assert C.max_ap_free_bruteforce(4, 3) == 3
    assert C.max_ap_free_bruteforce(8, 3) == 4
    assert C.max_ap_free_bruteforce(13, 3) == 7


def test_circulant_determinants():
    for k in range(3, 7):
        det, scaled = C._det_and_adjugate_times_det(C.circulant_matrix(k))
        assert det != 0


def test_circulant_construction_k3():
    B = C.circulant_construction(30, 3)
    assert len(B) >= 16
    assert is_fujimura(B, 30)  # also checked at generation


def test_circulant_simplex_images():
    assert C.simplex_image_progressions(20, 3, 2000, 1)
    assert C.simplex_image_progressions(12, 4, 500, 2)
    assert C.simplex_image_progressions(10, 5, 500, 3)


def test_sphere_lb():
    assert C.sphere_lb(3, 2).size == 12
    assert C.sphere_lb(1, 1).size == 2
    for n in range(2, 5):
        for i in range(1, n + 1):
            assert is_moser(C.sphere_lb(n, i))


@pytest.mark.parametrize("n,expected", [(2, 6), (3, 16), (4, 40), (5, 120), (6, 336)])
def test_semisphere_values(n, expected):
    i, size = C.best_semisphere(n)
    assert size == expected
    A = C.semisphere_lb(n, i)
    assert A.size == expected
    if n <= 5:
        assert is_moser(A)


def test_sphere_shell_lb():
    assert C.sphere_shell_lb(4, 3).size == 43
    assert C.sphere_shell_lb(5, 4).size == 124
    with pytest.raises(ValueError):
        C.sphere_shell_lb(4, 3, extras=("1111", "1133"))  # distance-2 pair


def test_coding_bounds():
    expected = [42, 124, 344, 960, 2832, 7880, 22232, 66024, 188688, 539168]
    got = [C.coding_bound(n)["bound"] for n in range(4, 14)]
    assert got == expected


def test_coding_witnesses():
    for n in (4, 5, 6):
        r = C.coding_bound(n, want_witness=True)
        w = r["witness"]
        assert w is not None
        assert w.size == r["bound"]
        assert is_moser(w)


def test_ab_moser_n5():
    B = C.N5_CELLS
    assert is_isosceles_free(B)
    A = C.ab_moser(B, 5)
    assert A.size == 122
    assert is_moser(A)
    A_plus = C.augment_ab(B, C.N5_EXTRAS, 5)
    assert A_plus.size == 124
    assert is_moser(A_plus)


def test_augment_n10():
    assert C.simplex_weight(C.N10_CELLS) == 24786
    A = C.augment_ab(C.N10_CELLS, C.N10_EXTRAS, 10)
    assert A.size == 24798
    # extras live in one cell and avoid the forbidden interchange distance
    for t1, t2 in combinations(C.N10_EXTRAS, 2):
        d = sum(a != b for a, b in zip(t1, t2))
        assert d != 4


def test_augment_rejects_bad_extras():
    bad = "1113311333"  # distance 4 from the first bundled extra
    assert sum(a != b for a, b in zip("1111133333", bad)) == 4
    with pytest.raises(ValueError):
        C.augment_ab(C.N10_CELLS, ("1111133333", bad), 10)


def test_neighbor_bound():
    # oracle: maximum subset of a cell with no single 1<->3 interchange pair
    def brute_max(cell):
        from hjm.cube import cell_members

        words = [w.digits for w in cell_members(cell)]
        best = 0

        def neighbors(u, v):
            diff = [(a, b) for a, b in zip(u, v) if a != b]
            return len(diff) == 2 and sorted(
                (a, b) for a, b in diff
            ) == [(1, 3), (3, 1)]

        def rec(i, chosen):
            nonlocal best
            if i == len(words):
                best = max(best, len(chosen))
                return
            if len(chosen) + len(words) - i <= best:
                return
            u = words[i]
            if not any(neighbors(u, v) for v in chosen):
                rec(i + 1, chosen + [u])
            rec(i + 1, chosen)

        rec(0, [])
        return best

    for cell in [(1, 1, 1), (2, 0, 2), (1, 2, 1), (2, 1, 2)]:
        assert brute_max(cell) <= C.neighbor_bound(cell)


def test_higher_k_sets():
    A = C.higher_k(4, 4)
    assert A.size == sum(
        1 for _ in range(1)
    ) * A.size  # placeholder sanity; real checks below
    assert is_moser(A)
    assert is_moser(C.higher_k(3, 5))
    A6 = C.higher_k(3, 6)
    assert is_moser(A6)
    base = C.gamma_union(C.dhj_cells(3), 3, 3)
    assert A6.size == 2**3 * base.size


def test_good_sets():
    types = list(product((1, 3), repeat=4))
    sets = {t: C.good_set(*t) for t in types}
    assert len({s.bits for s in sets.values()}) == 16
    for t, s in sets.items():
        assert statistics(s).entries == (6, 12, 18, 4, 0)
        one_letter = sorted(w for w in s.texts() if w.count("2") == 3)
        x, y, z, w = t
        assert one_letter == sorted(
            [f"{x}222", f"2{y}22", f"22{z}2", f"222{w}"]
        )


def test_good_sets_all_equivalent():
    from hjm.symmetry import canonical_form

    keys = {
        canonical_form(C.good_set(*t), "geometric").bits
        for t in product((1, 3), repeat=4)
    }
    assert len(keys) == 1


def test_asymptotic_params():
    p3 = C.AsymptoticParams.for_k(3)
    assert p3.ell == 2 and p3.beta == Fraction(1, 2)
    p4 = C.AsymptoticParams.for_k(4)
    assert p4.ell == 2
    p5 = C.AsymptoticParams.for_k(5)
    assert p5.ell == 3
    for k in range(3, 9):
        p = C.AsymptoticParams.for_k(k)
        assert 2 * k > 2**p.ell
        assert k > 2 ** (p.ell - 1)
