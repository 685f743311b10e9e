import random
from fractions import Fraction

import pytest

from hjm.cube import PointSet, Word, sphere_members
from hjm import construct as C
from hjm import verify as V
from hjm.verify import (
    Certificate,
    LinearInequality,
    StatVector,
    check_double_counting,
    hoc_check,
    is_cap_set,
    is_line_free,
    is_moser,
    known_inequality_bank,
    lym_sum,
    make_certificate,
    make_simplex_certificate,
    pair_deficiency,
    propagate,
    statistics,
    verify_certificate,
)

X2 = PointSet.from_texts(["12", "13", "21", "22", "31", "33"], 3)
EX_2MOS = PointSet.from_texts(["12", "13", "21", "23", "31", "32"], 3)


def test_predicates_basic():
    assert is_line_free(X2)
    assert not is_moser(X2)  # contains the antidiagonal 13, 22, 31
    assert is_moser(EX_2MOS)
    full = PointSet.full(2, 3)
    assert not is_line_free(full)
    assert not is_moser(full)
    for n in (1, 2, 3):
        for i in range(1, n + 1):
            assert is_moser(sphere_members(i, "all", n))


def test_cap_sets():
    assert is_cap_set(PointSet.from_texts(["11"], 3))
    assert not is_cap_set(PointSet.from_texts(["11", "22", "33"], 3))
    # the 4-point cap in dimension 2
    assert is_cap_set(PointSet.from_texts(["11", "12", "21", "22"], 3))


def test_statistics_example():
    s = statistics(EX_2MOS)
    assert s.entries == (2, 4, 0)
    assert s.densities() == (Fraction(1, 2), Fraction(1), Fraction(0))
    assert statistics(PointSet.empty(2, 3)).entries == (0, 0, 0)
    assert statistics(PointSet.full(3, 3)).entries == (8, 12, 6, 1)


def test_statistics_invariant_under_geometry():
    from hjm.symmetry import apply_set, group_elements

    rng = random.Random(11)
    els = list(group_elements(3, 3, "geometric"))
    for _ in range(40):
        A = PointSet(3, 3, rng.getrandbits(27))
        g = rng.choice(els)
        assert statistics(A).entries == statistics(apply_set(g, A)).entries


def test_double_counting():
    report = check_double_counting(EX_2MOS)
    # the side-slice average of the one-2 count equals the centre average
    level0 = report["levels"][0]
    assert level0["side_average"] == 4
    assert level0["centre_average"] == 4
    check_double_counting(PointSet.empty(3, 3))
    rng = random.Random(12)
    for n in (2, 3, 4):
        for _ in range(40):
            check_double_counting(PointSet(n, 3, rng.getrandbits(3**n)))


def test_propagate_and_bank():
    base = LinearInequality((Fraction(2), Fraction(1)), Fraction(2))
    inst = propagate(base, 2, 1, 5)
    assert inst.slots() == [1, 3]
    with pytest.raises(ValueError):
        propagate(base, 1, 3, 3)  # N < m*q + r
    bank1 = known_inequality_bank(1)
    assert all(len(i.coeffs) == 2 for i in bank1)
    bank3 = known_inequality_bank(3)
    descs = {i.describe() for i in bank3}
    assert any("8*a0 + 6*a1 + 6*a2 + 2*a3 <= 11" in d for d in descs)
    assert any("4*a0 + 4*a1 + 3*a2 + 1*a3 <= 6" in d for d in descs)


def test_bank_exhaustive_n2():
    # every Moser subset of [3]^2 satisfies every bank instance
    bank = known_inequality_bank(2)
    rows = [iq.integer_row(2) for iq in bank]
    for bits in range(1 << 9):
        A = PointSet(2, 3, bits)
        if not is_moser(A):
            continue
        s = statistics(A)
        for iq, (row, bound) in zip(bank, rows):
            assert iq.check(s)
            assert sum(r * a for r, a in zip(row, s.entries)) <= bound


def test_integer_row_matches_rational():
    rng = random.Random(13)
    bank = known_inequality_bank(4)
    for _ in range(200):
        A = PointSet(4, 3, rng.getrandbits(81))
        s = statistics(A)
        for iq in rng.sample(bank, 10):
            row, bound = iq.integer_row(4)
            lhs = sum(r * a for r, a in zip(row, s.entries))
            assert (lhs <= bound) == iq.check(s)


def test_pair_deficiency():
    full = sphere_members(5, "all", 5)
    assert pair_deficiency(full) == 160
    assert pair_deficiency(PointSet.from_texts(["11111"], 3)) == 0
    assert pair_deficiency(PointSet.from_texts(["11111", "11133"], 3)) == 1
    with pytest.raises(ValueError):
        pair_deficiency(PointSet.from_texts(["11112"], 3))


def test_lym_and_hoc():
    assert lym_sum(PointSet.empty(2, 3)) == 0
    # sampled antichains over the two-letter alphabet
    rng = random.Random(14)
    for n in (3, 4, 5):
        for _ in range(30):
            bits = rng.getrandbits(2**n)
            A = PointSet(n, 2, bits)
            # greedy repair: drop the larger point of each comparable pair
            idxs = list(A.indices())
            drop = set()
            for i in idxs:
                for j in idxs:
                    if i == j or i in drop or j in drop:
                        continue
                    di = [(i // 2**t) % 2 for t in range(n)]
                    dj = [(j // 2**t) % 2 for t in range(n)]
                    if all(a <= b for a, b in zip(di, dj)):
                        drop.add(j)
            for j in drop:
                A = A.without_index(j)
            assert is_line_free(A)
            assert lym_sum(A) <= 1

    twelve = PointSet.from_texts(
        ["11", "12", "13", "21", "23", "24", "32", "33", "34", "41", "42", "44"], 4
    )
    rep = hoc_check(twelve, 2, 4)
    assert rep.fujimura_max == 7
    assert rep.lym == Fraction(15, 2)
    assert rep.violated


def test_defect_scores_identity():
    A = C.semisphere_lb(6, 5)
    avg = V.check_defect_identity(A)
    assert avg == 356 - A.size  # no points with five or six 2s
    w = C.coding_bound(6, want_witness=True)["witness"]
    V.check_defect_identity(w)


def test_certificate_roundtrip_and_verify():
    A = C.sphere_shell_lb(4, 3)
    cert = make_certificate(A, "moser", provenance={"generator": "sphere-shell"})
    text = cert.to_json()
    back = Certificate.from_json(text)
    assert verify_certificate(back).ok
    assert back.to_json() == text  # byte-stable

    tampered = Certificate.from_json(text)
    tampered.points[0] = "2222"
    rep = verify_certificate(tampered)
    assert not rep.ok


def test_certificate_named_line():
    A = PointSet.from_texts(["12", "22", "32", "11"], 3)
    cert = make_certificate(A, "line-free")
    rep = verify_certificate(cert)
    assert not rep.ok
    assert any("12, 22, 32" in f for f in rep.failures)


def test_simplex_certificates():
    cert = make_simplex_certificate(C.trimmed_b0(4), 4, 3, "fujimura")
    assert cert.claim["weight"] == 52
    assert verify_certificate(cert).ok
    bad = make_simplex_certificate(C.b_jn(0, 4), 4, 3, "fujimura")
    assert not verify_certificate(bad).ok

    mb = make_simplex_certificate(C.N10_CELLS, 10, 3, "moser-b", extras=C.N10_EXTRAS)
    assert mb.claim["weight"] == 24798
    assert verify_certificate(mb).ok


def test_moser_sampling_deterministic():
    a = V.sample_moser_sets(3, 5, seed=42)
    b = V.sample_moser_sets(3, 5, seed=42)
    assert a == b
    for bits in a:
        assert is_moser(PointSet(3, 3, bits))


def test_line_free_slices():
    rng = random.Random(15)
    from hjm.cube import slice_extract

    samples = V.sample_moser_sets(3, 10, seed=1)
    for bits in samples:
        A = PointSet(3, 3, bits)
        for axis in range(3):
            for v in (1, 2, 3):
                assert is_moser(slice_extract(A, axis, v))
