import numpy as np
import pytest

from hjm import fourd, search
from hjm.construct import good_set, sphere_shell_lb, xyz_set
from hjm.cube import PointSet
from hjm.symmetry import canonical_form
from hjm.tables import pareto4_reference_rows
from hjm.verify import is_cap_set, is_line_free, is_moser, statistics

PARETOP_3D = {
    (3, 6, 3, 1), (4, 4, 3, 1), (4, 6, 2, 1), (2, 6, 6, 0), (3, 6, 5, 0),
    (4, 4, 5, 0), (3, 7, 4, 0), (4, 6, 4, 0), (3, 9, 3, 0), (4, 7, 3, 0),
    (5, 4, 3, 0), (4, 9, 2, 0), (5, 6, 2, 0), (6, 3, 2, 0), (3, 10, 1, 0),
    (5, 7, 1, 0), (6, 4, 1, 0), (4, 12, 0, 0), (5, 9, 0, 0), (6, 6, 0, 0),
    (7, 3, 0, 0), (8, 0, 0, 0),
}


def test_enumeration_counts():
    assert search.enumerate_all(0, 3, "moser") == 2
    assert search.enumerate_all(2, 3, "moser") == 230
    assert search.enumerate_all(2, 3, "line-free") == 247


def test_enumeration_counts_3d():
    assert search.enumerate_all(3, 3, "moser") == 3813884
    assert search.enumerate_all(3, 3, "line-free") == 6164014


def test_masks_are_valid_sets():
    t = search.cube3_tables("moser")
    rng = np.random.default_rng(1)
    for m in rng.choice(t.masks, 50, replace=False).tolist():
        assert is_moser(PointSet(3, 3, int(m)))
    t = search.cube3_tables("line-free")
    for m in rng.choice(t.masks, 50, replace=False).tolist():
        assert is_line_free(PointSet(3, 3, int(m)))


def test_max_set_small():
    best, wits = search.max_set(2, 3, "line-free")
    assert best == 6 and len(wits) == 4
    texts = {tuple(w.texts()) for w in wits}
    assert ("12", "13", "21", "22", "31", "33") in texts  # the residue set
    assert ("12", "13", "21", "23", "31", "32") in texts  # the symmetric one

    best, wits = search.max_set(3, 3, "line-free")
    assert best == 18 and len(wits) == 1
    assert wits[0].bits == xyz_set().bits

    best, wits = search.max_set(3, 3, "moser")
    assert best == 16
    for w in wits:
        assert statistics(w).entries == (4, 12, 0, 0)


def test_max_cap_sets():
    for n, expected in [(0, 1), (1, 2), (2, 4), (3, 9)]:
        best, wits = search.max_set(n, 3, "cap-set")
        assert best == expected
        assert is_cap_set(wits[0])


def test_pareto_small():
    assert set(search.pareto(1, 3, "moser").vectors()) == {(2, 0), (1, 1)}
    f2 = search.pareto(2, 3, "moser")
    assert set(f2.vectors()) == {(4, 0, 0), (3, 2, 0), (2, 4, 0), (2, 2, 1)}
    assert set(f2.extremal_vectors()) == {(4, 0, 0), (2, 4, 0), (2, 2, 1)}
    for s, w in f2.entries:
        A = PointSet(2, 3, w)
        assert is_moser(A)
        assert statistics(A).entries == s


def test_pareto_3d_published():
    f3 = search.pareto(3, 3, "moser")
    assert set(f3.vectors()) == PARETOP_3D
    assert f3.check_nondominated()
    # the published extremal list plus (3,10,1,0), which the exact LP
    # certifies is not a combination of the other Pareto vectors
    assert set(f3.extremal_vectors()) == {
        (3, 6, 3, 1), (4, 4, 3, 1), (4, 6, 2, 1), (2, 6, 6, 0), (4, 4, 5, 0),
        (4, 6, 4, 0), (4, 12, 0, 0), (8, 0, 0, 0), (3, 10, 1, 0),
    }
    for s, w in f3.entries:
        A = PointSet(3, 3, w)
        assert is_moser(A)
        assert statistics(A).entries == s


def test_slice_search_agrees_bit_for_bit():
    f3 = search.pareto(3, 3, "moser")
    g3 = search.slice_search(3, "moser")
    assert f3.entries == g3.entries


def test_slice_search_linefree_agrees():
    f = search.pareto(3, 3, "line-free")
    g = search.slice_search(3, "line-free")
    assert f.entries == g.entries


def test_middle_tables_short():
    tabs = search.middle_pareto_tables("moser")
    assert max(len(v) for v in tabs.values()) <= 23


def test_frontier_downward_feasibility():
    # reducing any coordinate of a frontier entry keeps it feasible:
    # deleting points preserves the predicate
    f2 = search.pareto(2, 3, "moser")
    feasible = {statistics(PointSet(2, 3, m)).entries
                for m in search.masks_upto2(2, "moser")}
    for s, _ in f2.entries:
        for i in range(3):
            if s[i]:
                t = tuple(x - (1 if j == i else 0) for j, x in enumerate(s))
                assert t in feasible


def test_heuristic_deterministic_and_valid():
    A = search.heuristic_max(2, 3, "line-free", budget_steps=500, seed=3)
    assert A.size == 6
    B = search.heuristic_max(3, 3, "moser", budget_steps=2000, seed=3)
    C = search.heuristic_max(3, 3, "moser", budget_steps=2000, seed=3)
    assert B.bits == C.bits
    assert is_moser(B)
    assert B.size >= 14


def test_heuristic_moser4():
    A = search.heuristic_max(4, 3, "moser", budget_steps=2000, seed=0)
    assert A.size >= 40
    assert is_moser(A)


def test_checkpoint_roundtrip(tmp_path):
    ck = search.SearchCheckpoint(
        shard=3, frontier=[((1, 2, 3, 4, 5), 99)], pairs_done=7, total_pairs=9,
        wall_seconds=1.25, completed=False,
    )
    back = search.SearchCheckpoint.from_json(ck.to_json())
    assert back.frontier == [((1, 2, 3, 4, 5), 99)]
    assert back.shard == 3 and not back.completed


# ---------------------------------------------------------------------------
# 4D machinery


def test_grouped_triples_cover_all_lines():
    groups = fourd.grouped_triples()
    assert sum(len(v) for v in groups.values()) == (5**4 - 3**4) // 2


def test_corner_shards():
    shards = fourd.corner_shards()
    assert len(shards) == 396
    assert all(bin(p).count("1") >= 3 for p in shards)


def test_small_shard_rows_match_reference():
    shards = fourd.corner_shards()
    s15 = next(i for i, p in enumerate(shards) if bin(p).count("1") == 15)
    s16 = next(i for i, p in enumerate(shards) if bin(p).count("1") == 16)
    r15 = fourd.shard_frontier(s15)
    r16 = fourd.shard_frontier(s16)
    assert [s for s, _ in r15.frontier] == pareto4_reference_rows(15)
    assert [s for s, _ in r16.frontier] == pareto4_reference_rows(16)
    for s, w in r15.frontier + r16.frontier:
        A = PointSet(4, 3, w)
        assert is_moser(A)
        assert statistics(A).entries == s


def test_count_by_statistics_small():
    assert fourd.count_by_statistics((0, 0, 0, 0, 0)) == 1
    assert fourd.count_by_statistics((0, 0, 0, 0, 1)) == 1
    assert fourd.count_by_statistics((16, 0, 0, 0, 0)) == 1  # all corners
    assert fourd.count_by_statistics((6, 12, 18, 4, 0)) == 16
    # infeasible statistics count zero
    assert fourd.count_by_statistics((16, 32, 24, 8, 1)) == 0


def test_count_by_statistics_oracle_row():
    # oracle: direct count over all Moser sets of [3]^3-style is impossible
    # in 4D, so cross-check a thin stratum against the shard engine instead:
    # sets with all 16 corners are counted by the a=16 shard (exactly one).
    collected = []
    fourd.count_by_statistics((16, 0, 0, 0, 0), collect=collected)
    assert len(collected) == 1
    A = PointSet(4, 3, collected[0])
    assert is_moser(A) and statistics(A).entries == (16, 0, 0, 0, 0)


def test_good_set_classify():
    g = fourd.good_set_classify()
    assert g["count"] == 16
    assert g["classes"] == 1
    assert set(g["by_type"]) == {
        "".join(t) for t in __import__("itertools").product("13", repeat=4)
    }
    for t, A in g["by_type"].items():
        assert A.bits == good_set(*(int(c) for c in t)).bits


def test_max_moser4():
    best, witness = fourd.max_moser4()
    assert best == 43
    assert witness.size == 43
    assert is_moser(witness)


def test_stat_clauses_on_reference():
    from hjm.tables import pareto4_reference

    assert fourd.check_stat_clauses(pareto4_reference()) == []
    assert fourd.check_stat_clauses([(16, 16, 8, 3, 1)]) != []


def test_merge_frontiers():
    f1 = search.ParetoFrontier(4, [((1, 0, 0, 0, 0), 5)])
    f2 = search.ParetoFrontier(4, [((0, 2, 0, 0, 0), 7), ((1, 0, 0, 0, 0), 3)])
    merged = search.merge_frontiers([f1, f2], 4)
    assert dict(merged.entries) == {(1, 0, 0, 0, 0): 3, (0, 2, 0, 0, 0): 7}
