import math

import pytest

from hjm import cube
from hjm.cube import (
    ANTIWILD,
    WILD,
    DimensionError,
    LineTemplate,
    PointSet,
    Word,
    cell_of,
    cell_size,
    enumerate_lines,
    enumerate_words,
    hamming,
    line_count,
    line_points,
    simplex_points,
    slice_embed,
    slice_extract,
    sphere_members,
    sphere_of,
)


def test_enumerate_words_counts():
    assert len(list(enumerate_words(2, 3))) == 9
    assert len(list(enumerate_words(0, 3))) == 1
    assert len(list(enumerate_words(4, 3))) == 81


def test_word_roundtrip():
    for w in enumerate_words(3, 3):
        assert Word.from_index(w.index, 3, 3) == w
        assert Word.from_text(w.text, 3) == w


def test_index_order_is_distinct():
    seen = [w.index for w in enumerate_words(2, 4)]
    assert seen == list(range(16))


def test_dimension_overflow():
    with pytest.raises(DimensionError):
        cube.cube_cells(100, 3)


def test_line_points_combinatorial():
    t = LineTemplate(2, 3, (WILD, 2), "combinatorial")
    assert sorted(w.text for w in line_points(t)) == ["12", "22", "32"]
    t = LineTemplate(2, 3, (WILD, WILD), "combinatorial")
    assert sorted(w.text for w in line_points(t)) == ["11", "22", "33"]


def test_line_points_geometric():
    t = LineTemplate(2, 3, (WILD, ANTIWILD), "geometric")
    assert sorted(w.text for w in line_points(t)) == ["13", "22", "31"]


def test_line_counts_small():
    assert len(list(enumerate_lines(2, 3, "combinatorial"))) == 7
    assert len(list(enumerate_lines(2, 3, "geometric"))) == 8
    # ((3+2)^1 - 3)/2 = 1: the only geometric line of [3]^1 is {1,2,3}
    assert len(list(enumerate_lines(1, 3, "geometric"))) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_line_count_formulas(n):
    assert len(list(enumerate_lines(n, 3, "combinatorial"))) == line_count(n, 3, "combinatorial")
    assert len(list(enumerate_lines(n, 3, "geometric"))) == line_count(n, 3, "geometric")


def test_lines_have_k_distinct_points():
    for t in enumerate_lines(2, 3, "geometric"):
        pts = t.indices()
        assert len(set(pts)) == 3


def test_geometric_lines_are_distinct_sets():
    seen = {frozenset(t.indices()) for t in enumerate_lines(3, 3, "geometric")}
    assert len(seen) == line_count(3, 3, "geometric")


def test_combinatorial_subset_of_geometric():
    for n in (1, 2, 3):
        geo = {frozenset(t.indices()) for t in enumerate_lines(n, 3, "geometric")}
        for t in enumerate_lines(n, 3, "combinatorial"):
            assert frozenset(t.indices()) in geo


def test_cell_of_and_size():
    assert cell_size((1, 1, 1)) == 6
    assert cell_size((2, 0, 0)) == 1
    w = Word.from_text("1123", 3)
    assert cell_of(w) == (2, 1, 1)


@pytest.mark.parametrize("n", [5, 30, 100])
def test_cell_sizes_sum_to_cube(n):
    assert sum(cell_size(p) for p in simplex_points(n, 3)) == 3**n


def test_line_cells_form_simplex():
    # the cells of the k points of a combinatorial line differ by +r in
    # the letter substituted for the wildcard
    for t in enumerate_lines(3, 3, "combinatorial"):
        r = sum(1 for s in t.symbols if s == WILD)
        cells = [cell_of(p) for p in line_points(t)]
        base = tuple(cells[0][j] - (r if j == 0 else 0) for j in range(3))
        for i, c in enumerate(cells):
            assert c == tuple(base[j] + (r if j == i else 0) for j in range(3))


def test_sphere_members():
    assert sphere_members(1, "odd", 3).texts() == ["122", "212", "221"]
    assert sphere_members(1, "even", 3).texts() == ["223", "232", "322"]
    assert len(sphere_members(2, "all", 4)) == 24
    assert sphere_of(Word.from_text("2222", 3)).i == 0


def test_sphere_cardinalities_and_partition():
    for n in range(1, 6):
        total = 0
        for i in range(n + 1):
            s = sphere_members(i, "all", n)
            assert len(s) == math.comb(n, i) * 2**i
            total += len(s)
            if i > 0:
                odd = sphere_members(i, "odd", n)
                even = sphere_members(i, "even", n)
                assert len(odd) == len(even) == math.comb(n, i) * 2 ** (i - 1)
                assert odd.intersection(even).size == 0
                assert odd.union(even).bits == s.bits
        assert total == 3**n


def test_sphere_parity_split_rejected_for_centre():
    with pytest.raises(ValueError):
        sphere_members(0, "odd", 3)


def test_hamming():
    assert hamming(Word.from_text("123", 3), Word.from_text("321", 3)) == 2
    w = Word.from_text("123", 3)
    assert hamming(w, w) == 0
    assert hamming(Word.from_text("111", 3), Word.from_text("333", 3)) == 3


def test_slice_roundtrip_and_partition():
    full2 = PointSet.full(2, 3)
    assert slice_extract(PointSet.full(2, 3), 0, 2).bits == PointSet.full(1, 3).bits

    inner = PointSet.from_texts(["21", "22"], 3)
    emb = slice_embed(inner, 0, 2)
    assert set(emb.texts()) == {"221", "222"}
    assert slice_extract(emb, 0, 2).bits == inner.bits

    # partition: re-embedding the three extractions recovers the set
    import random

    rng = random.Random(7)
    A = PointSet(2, 3, rng.getrandbits(9))
    for axis in range(2):
        rebuilt = PointSet.empty(2, 3)
        for v in (1, 2, 3):
            rebuilt = rebuilt.union(slice_embed(slice_extract(A, axis, v), axis, v))
        assert rebuilt.bits == A.bits


def test_embed_example_from_slice_notation():
    inner = PointSet.full(2, 3)
    emb = slice_embed(inner, 0, 2)
    assert emb.size == 9
    assert all(t.startswith("2") for t in emb.texts())


def test_pointset_text_roundtrip():
    A = PointSet.from_texts(["12", "31"], 3)
    assert A.texts() == ["12", "31"]
    assert A.size == 2
    assert Word.from_text("12", 3) in A
    assert Word.from_text("11", 3) not in A


def test_cell_members():
    members = sorted(w.text for w in cube.cell_members((1, 1, 1)))
    assert members == ["123", "132", "213", "231", "312", "321"]
    assert sum(1 for _ in cube.cell_members((2, 1, 1))) == cell_size((2, 1, 1))
