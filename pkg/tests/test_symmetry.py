import random

import numpy as np
import pytest

from hjm.cube import PointSet, Word, enumerate_lines, sphere_members
from hjm import symmetry
from hjm.symmetry import (
    GroupElement,
    GroupTooLargeError,
    apply_set,
    canonical_form,
    canonical_keys_array,
    classify_orbits,
    group_elements,
    group_order,
    orbit_representatives,
)

# the four maximum line-free subsets of [3]^2
X2 = PointSet.from_texts(["12", "13", "21", "22", "31", "33"], 3)
Y2 = PointSet.from_texts(["11", "12", "21", "23", "32", "33"], 3)
Z2 = PointSet.from_texts(["11", "13", "22", "23", "31", "32"], 3)
W2 = PointSet.from_texts(["12", "13", "21", "23", "31", "32"], 3)


def test_group_orders():
    assert group_order(2, 3, "combinatorial") == 12
    assert group_order(3, 3, "geometric") == 48
    assert len(list(group_elements(3, 3, "geometric"))) == 48
    assert len(list(group_elements(2, 3, "combinatorial"))) == 12


def test_apply_reflection_example():
    g = GroupElement(4, 3, "geometric", (0, 1, 2, 3), None, (1, 0, 0, 0))
    assert g.apply(Word.from_text("1123", 3)).text == "3123"


def test_identity_and_inverse():
    for kind in ("combinatorial", "geometric"):
        e = GroupElement.identity(3, 3, kind)
        A = PointSet.from_texts(["112", "333"], 3)
        assert apply_set(e, A).bits == A.bits
        rng = random.Random(0)
        els = list(group_elements(3, 3, kind))
        for g in rng.sample(els, 12):
            assert g.compose(g.inverse()) == e
            assert g.inverse().compose(g) == e


def test_group_laws_sampled():
    rng = random.Random(1)
    els = list(group_elements(3, 3, "geometric"))
    w = Word.from_text("123", 3)
    for _ in range(200):
        g1, g2, g3 = rng.choice(els), rng.choice(els), rng.choice(els)
        assert g1.compose(g2).compose(g3) == g1.compose(g2.compose(g3))
        assert g1.compose(g2).apply(w) == g1.apply(g2.apply(w))


def test_apply_is_bijective():
    for kind in ("combinatorial", "geometric"):
        for g in list(group_elements(2, 3, kind))[:6]:
            images = {g.apply(Word.from_index(i, 2, 3)).index for i in range(9)}
            assert images == set(range(9))


def test_lines_map_to_lines():
    rng = random.Random(2)
    geo_lines = {frozenset(t.indices()) for t in enumerate_lines(3, 3, "geometric")}
    comb_lines = {frozenset(t.indices()) for t in enumerate_lines(3, 3, "combinatorial")}
    geo_els = list(group_elements(3, 3, "geometric"))
    comb_els = list(group_elements(3, 3, "combinatorial"))
    for _ in range(25):
        g = rng.choice(geo_els)
        imap = g.index_map()
        line = rng.choice(sorted(geo_lines, key=min))
        assert frozenset(imap[i] for i in line) in geo_lines
        h = rng.choice(comb_els)
        imap = h.index_map()
        line = rng.choice(sorted(comb_lines, key=min))
        assert frozenset(imap[i] for i in line) in comb_lines


def test_canonical_form_empty():
    A = PointSet.empty(2, 3)
    assert canonical_form(A, "combinatorial").bits == 0


def test_canonical_form_2d_extremals():
    cx = canonical_form(X2, "combinatorial")
    cy = canonical_form(Y2, "combinatorial")
    cz = canonical_form(Z2, "combinatorial")
    cw = canonical_form(W2, "combinatorial")
    assert cx.bits == cy.bits == cz.bits
    assert cw.bits != cx.bits


def test_canonical_form_orbit_invariance():
    rng = random.Random(3)
    els = list(group_elements(3, 3, "geometric"))
    for _ in range(100):
        A = PointSet(3, 3, rng.getrandbits(27))
        g = rng.choice(els)
        assert canonical_form(A, "geometric").bits == canonical_form(apply_set(g, A), "geometric").bits


def test_sphere_halves_equivalent():
    # a single full reflection swaps the parity classes when i is odd;
    # reflecting one coordinate does it when i = n
    for i, n in [(1, 3), (3, 3), (2, 2), (4, 4)]:
        odd = sphere_members(i, "odd", n)
        even = sphere_members(i, "even", n)
        assert canonical_form(odd, "geometric").bits == canonical_form(even, "geometric").bits


def test_canonical_keys_array_matches_scalar():
    rng = random.Random(4)
    masks = [rng.getrandbits(27) for _ in range(64)]
    arr = np.array(masks, dtype=np.int64)
    keys = canonical_keys_array(arr, 3, 3, "geometric")
    for m, key in zip(masks, keys.tolist()):
        assert symmetry.canonical_key(PointSet(3, 3, m), "geometric") == key


def test_classify_orbits_singleton():
    census = classify_orbits([PointSet.from_texts(["11"], 3, n=2)], 2, 3, "geometric")
    assert census.classes == 1
    assert census.total == 1
    assert census.check()


def test_classify_orbits_full_orbit():
    A = PointSet.from_texts(["112"], 3)
    orbit = {apply_set(g, A).bits for g in group_elements(3, 3, "geometric")}
    census = classify_orbits([PointSet(3, 3, b) for b in orbit], 3, 3, "geometric")
    assert census.classes == 1
    assert census.histogram == {len(orbit): 1}


def test_orbit_representatives_centre_sphere():
    reps = orbit_representatives(sphere_members(0, "all", 3), "geometric")
    assert len(reps) == 2
    assert sorted(r.size for r in reps) == [0, 1]


def test_orbit_representatives_s12_bruteforce():
    stratum = sphere_members(1, "all", 2)
    reps = orbit_representatives(stratum, "geometric")
    # oracle: orbit count by canonicalising every subset of the stratum
    pts = list(stratum.indices())
    seen = set()
    for mask in range(1 << len(pts)):
        bits = 0
        for j, idx in enumerate(pts):
            if mask >> j & 1:
                bits |= 1 << idx
        seen.add(canonical_form(PointSet(2, 3, bits), "geometric").bits)
    assert len(reps) == len(seen)
    assert {r.bits for r in reps} == seen


def test_orbit_representatives_corner_stratum_count():
    # Subsets of the 4D corner sphere up to cube symmetries.  An exhaustive
    # census gives 402 classes, 396 of them with at least three points
    # (verified against a direct orbit enumeration; the literature quotes
    # 391 for the >=3 case, which exhaustive counting does not reproduce).
    reps = orbit_representatives(sphere_members(4, "all", 4), "geometric")
    assert len(reps) == 402
    assert sum(1 for r in reps if r.size >= 3) == 396
    from collections import Counter

    by_size = Counter(r.size for r in reps)
    # complementation is a size-reversing bijection on classes
    for s in range(17):
        assert by_size.get(s, 0) == by_size.get(16 - s, 0)


def test_group_too_large():
    with pytest.raises(GroupTooLargeError):
        list(group_elements(7, 3, "geometric"))


def test_moser_preserved_under_geometric_group():
    # A is Moser iff g(A) is, exhaustively over the group at n = 2
    from hjm.verify import is_moser

    rng = random.Random(5)
    els = list(group_elements(2, 3, "geometric"))
    for _ in range(40):
        A = PointSet(2, 3, rng.getrandbits(9))
        moser = is_moser(A)
        for g in els:
            assert is_moser(apply_set(g, A)) == moser
