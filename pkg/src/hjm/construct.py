"""Generators for explicit lower-bound sets, each verified at build time.

Simplex-level objects are frozensets of coordinate tuples; word-level
objects are PointSets.  Every generator re-checks the defining property
of its output (triangle-freeness, isosceles-freeness, or a full line
scan) and raises InternalCheckError on failure, so a silent regression
cannot produce an unverified bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .cube import (
    PointSet,
    Word,
    cell_members,
    cell_of_index,
    cell_size,
    cube_cells,
    hamming_index,
    index_of_digits,
    simplex_points,
    sphere_mask,
    sphere_members,
)
from .tables import CodeTable
from .verify import (
    InternalCheckError,
    is_fujimura,
    is_isosceles_free,
    is_line_free,
    is_moser,
    isosceles_triples,
    simplex_triples,
)

SimplexSet = frozenset


def simplex_weight(B) -> int:
    """Exact big-integer weight sum of a simplex set."""
    return sum(cell_size(p) for p in B)


def gamma_union(B, n: int, k: int) -> PointSet:
    """The union of the cells of B, as a point set (small cubes only)."""
    bits = 0
    for p in B:
        if sum(p) != n or len(p) != k:
            raise ValueError(f"cell {p} does not belong to the ({n},{k}) grid")
        for w in cell_members(p, k):
            bits |= 1 << w.index
    A = PointSet(n, k, bits)
    if A.size != simplex_weight(B):
        raise InternalCheckError("gamma union weight mismatch")
    return A


# ---------------------------------------------------------------------------
# Residue-class simplex sets and their trims


def b_jn(j: int, n: int) -> SimplexSet:
    """Cells (a,b,c) of the (n,3) grid with a + 2b != j (mod 3)."""
    if j not in (0, 1, 2):
        raise ValueError("j must be 0, 1 or 2")
    return frozenset(
        p for p in simplex_points(n, 3) if (p[0] + 2 * p[1]) % 3 != j
    )


_TRIM_B0: dict[int, tuple[tuple[int, int, int], ...]] = {
    4: ((0, 0, 4), (0, 4, 0), (4, 0, 0)),
    5: ((0, 4, 1), (0, 5, 0), (4, 0, 1), (5, 0, 0)),
    # all six permutations of (0, 1, 5)
    6: ((0, 1, 5), (0, 5, 1), (1, 0, 5), (1, 5, 0), (5, 0, 1), (5, 1, 0)),
    # the eight listed points plus the two weight-1 corners, without which
    # the side-3 triangles based at (4,0,0) and (0,4,0) survive
    7: ((0, 1, 6), (1, 0, 6), (0, 5, 2), (5, 0, 2), (1, 5, 1), (5, 1, 1),
        (1, 6, 0), (6, 1, 0), (7, 0, 0), (0, 7, 0)),
}


def trimmed_b0(n: int) -> SimplexSet:
    """Triangle-free trims of the j=0 residue set for n = 4..7."""
    if n not in _TRIM_B0:
        raise ValueError(f"no trim list for n={n}")
    B = set(b_jn(0, n)) - set(_TRIM_B0[n])
    if not is_fujimura(B, n):
        raise InternalCheckError(f"trimmed set for n={n} is not triangle-free")
    return frozenset(B)


def dhj_cells(n: int) -> SimplexSet:
    """The best bundled triangle-free simplex set for a given n."""
    if n == 0:
        B = b_jn(1, 0)  # the j=0 class excludes the single cell
    elif n <= 3:
        B = b_jn(0, n)
    elif n in _TRIM_B0:
        B = trimmed_b0(n)
    elif n % 3 == 0 and n <= 999:
        B = medium_construction(n // 3)
    elif n % 3 == 2:  # n = 3m - 1: fix the leading digit of the 3m set to 1
        B = reduce_digit(medium_construction((n + 1) // 3), "1")
    else:  # n = 3m - 2: fix the two leading digits to 1, 2
        B = reduce_digit(medium_construction((n + 2) // 3), "12")
    if not is_fujimura(B, n):
        raise InternalCheckError(f"bundled set for n={n} is not triangle-free")
    return frozenset(B)


# ---------------------------------------------------------------------------
# The medium-n grouped construction (n = 3m)

_MEDIUM_GROUPS = (
    (-7, -3, 10), (-7, 0, 7), (-7, 3, 4), (-6, -4, 10), (-6, -1, 7),
    (-6, 2, 4), (-5, -1, 6), (-5, 2, 3), (-4, -2, 6), (-4, 1, 3),
    (-3, 1, 2), (-2, 0, 2), (-1, 0, 1),
)


def _medium_families(m: int):
    x = 0
    while m - 8 - 2 * x >= 0:
        for y in (0, 1):
            yield (-8 - y - 2 * x, -6 + y - 2 * x, 14 + 4 * x)
            yield (-8 - y - 2 * x, -3 + y - 2 * x, 11 + 4 * x)
            yield (-8 - y - 2 * x, x + y, 8 + x)
        yield (-8 - 2 * x, 3 + x, 5 + x)
        x += 1


def medium_construction(m: int) -> SimplexSet:
    """Triangle-free simplex set for n = 3m built from offset groups.

    Each group [a,b,c] stands for the cell (m+a, m+b, m+c) and all its
    permutations; groups with a negative coordinate are dropped.  For
    m >= 10 the family tails develop a handful of triangles, which are
    removed by deterministic least-weight deletion (the victims sit near
    the simplex corners, so the weight loss is negligible).  The result
    is re-verified triangle-free on every call.
    """
    n = 3 * m
    if not 7 <= n <= 999:
        raise ValueError("the grouped construction covers 7 <= n = 3m <= 999")
    cells: set[tuple[int, int, int]] = set()
    for offsets in list(_MEDIUM_GROUPS) + list(_medium_families(m)):
        point = tuple(m + o for o in offsets)
        if min(point) < 0:
            continue
        for perm in set(
            (point[i], point[j], point[3 - i - j])
            for i in range(3)
            for j in range(3)
            if j != i
        ):
            cells.add(perm)
    while True:
        triangles = [t for t in simplex_triples(cells, n)]
        if not triangles:
            break
        for tri in triangles:
            if all(p in cells for p in tri):
                cells.discard(min(tri, key=lambda p: (cell_size(p), p)))
    if not is_fujimura(cells, n):
        raise InternalCheckError(f"grouped construction failed for n={n}")
    return frozenset(cells)


def reduce_digit(B, prefix: str) -> SimplexSet:
    """Restrict the leading digits of the underlying words.

    prefix "1" maps an (n,3) set to an (n-1,3) set; prefix "12" maps it
    to an (n-2,3) set.
    """
    if prefix == "1":
        out = frozenset((a - 1, b, c) for (a, b, c) in B if a >= 1)
    elif prefix == "12":
        out = frozenset((a - 1, b - 1, c) for (a, b, c) in B if a >= 1 and b >= 1)
    else:
        raise ValueError("prefix must be '1' or '12'")
    return out


def medium_density(m: int) -> Fraction:
    """Exact density of the grouped construction's point set in [3]^{3m}."""
    B = medium_construction(m)
    return Fraction(simplex_weight(B), 3 ** (3 * m))


# ---------------------------------------------------------------------------
# Size-52 4D sets and relatives


def xyz_set() -> PointSet:
    """The unique maximum line-free subset of [3]^3 (18 points)."""
    A = gamma_union(b_jn(0, 3), 3, 3)
    if not is_line_free(A) or A.size != 18:
        raise InternalCheckError("xyz construction failed")
    return A


def e_sets() -> dict[str, PointSet]:
    """The three 52-point sets E0, E1, E2 and the 50-point set X in [3]^4."""
    removals = {
        "E0": (0, ("1111", "2222")),
        "E1": (1, ("2222", "3333")),
        "E2": (2, ("1111", "3333")),
    }
    out = {}
    for name, (j, removed) in removals.items():
        A = gamma_union(b_jn(j, 4), 4, 3)
        for text in removed:
            A = A.without_index(Word.from_text(text, 3).index)
        if A.size != 52 or not is_line_free(A):
            raise InternalCheckError(f"{name} construction failed")
        out[name] = A
    x_cells = [(3, 1, 0), (3, 0, 1), (2, 2, 0), (2, 0, 2), (1, 1, 2),
               (1, 2, 1), (0, 2, 2)]
    X = gamma_union(x_cells, 4, 3)
    if X.size != 50 or not is_line_free(X):
        raise InternalCheckError("X construction failed")
    out["X"] = X
    return out


# ---------------------------------------------------------------------------
# Progression-free integer sets


def _no_k_term_ap(values: set[int], x: int, k: int) -> bool:
    for d in range(1, x):
        if all(x - t * d in values for t in range(1, k)):
            return False
    return True


def behrend_set(N: int, k: int) -> frozenset[int]:
    """A subset of {1..N} with no k-term arithmetic progression.

    For k = 3 this uses the digit-sphere construction (digits below half
    the base, fixed sum of squares); larger k falls back to a greedy
    selector.  The progression-free property is re-verified exactly.
    """
    if k < 3:
        raise ValueError("need k >= 3")
    if N < 1:
        return frozenset()
    # greedy first-fit selector (strong at small N)
    best: set[int] = set()
    for x in range(1, N + 1):
        if _no_k_term_ap(best, x, k):
            best.add(x)
    if k == 3:
        # digit-sphere construction: digits below half the base never carry
        # when added, so a 3-term progression forces equal digit vectors on
        # a fixed sphere, which is impossible.  Wins for large N.
        for base in range(3, 33):
            half = (base + 1) // 2
            m = 1
            while base**m <= N:
                m += 1
            for radius in range(1, m * (half - 1) ** 2 + 1):
                chosen = set()
                for digits in product(range(half), repeat=m):
                    if sum(d * d for d in digits) != radius:
                        continue
                    value = sum(d * base**i for i, d in enumerate(digits)) + 1
                    if 1 <= value <= N:
                        chosen.add(value)
                if len(chosen) > len(best):
                    best = chosen
    values = sorted(best)
    for x in values:
        if not _no_k_term_ap(set(v for v in values if v < x), x, k):
            raise InternalCheckError("progression-free construction failed")
    return frozenset(best)


def max_ap_free_bruteforce(N: int, k: int = 3) -> int:
    """Exact maximum size of a k-AP-free subset of {1..N} (small N oracle)."""
    best = 0
    chosen: list[int] = []

    def rec(x: int):
        nonlocal best
        if len(chosen) + (N - x + 1) <= best:
            return
        if x > N:
            best = max(best, len(chosen))
            return
        if _no_k_term_ap(set(chosen), x, k):
            chosen.append(x)
            rec(x + 1)
            chosen.pop()
        rec(x + 1)

    rec(1)
    return best


# ---------------------------------------------------------------------------
# The circulant-matrix construction


def _circulant(k: int) -> list[list[int]]:
    first = list(range(1, k))
    return [first[-i:] + first[:-i] for i in range(k - 1)]


def _det_and_adjugate_times_det(M: list[list[int]]) -> tuple[int, list[list[Fraction]]]:
    from fractions import Fraction as F

    m = len(M)
    det = _int_det(M)
    if det == 0:
        raise InternalCheckError("circulant matrix is singular")
    inv = _fraction_inverse(M)
    scaled = [[inv[i][j] * det for j in range(m)] for i in range(m)]
    for row in scaled:
        for v in row:
            if v.denominator != 1:
                raise InternalCheckError("det(M)·M^-1 is not integral")
    return det, scaled


def _int_det(M: list[list[int]]) -> int:
    m = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for col in range(m):
        pivot = next((r for r in range(col, m) if A[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            A[col], A[pivot] = A[pivot], A[col]
            det = -det
        det *= A[col][col]
        inv = 1 / A[col][col]
        for r in range(col + 1, m):
            factor = A[r][col] * inv
            if factor:
                A[r] = [a - factor * b for a, b in zip(A[r], A[col])]
    assert det.denominator == 1
    return int(det)


def _fraction_inverse(M: list[list[int]]) -> list[list[Fraction]]:
    m = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(m)]
         for i, row in enumerate(M)]
    for col in range(m):
        pivot = next(r for r in range(col, m) if A[r][col] != 0)
        A[col], A[pivot] = A[pivot], A[col]
        inv = 1 / A[col][col]
        A[col] = [a * inv for a in A[col]]
        for r in range(m):
            if r != col and A[r][col]:
                factor = A[r][col]
                A[r] = [a - factor * b for a, b in zip(A[r], A[col])]
    return [row[m:] for row in A]


def circulant_matrix(k: int) -> list[list[int]]:
    return _circulant(k)


def circulant_construction(n: int, k: int) -> SimplexSet:
    """Triangle-free simplex set from progression-free fibres.

    Lattice points c + det(M)·M^(-1)·s for s in S^(k-1), with S a k-AP-free
    set of integers in [-sqrt(n)/2, sqrt(n)/2), pulled back to the simplex
    grid.  Verified triangle-free on every call.
    """
    if k < 3:
        raise ValueError("need k >= 3")
    M = _circulant(k)
    det, scaled_inv = _det_and_adjugate_times_det(M)
    width = math.isqrt(n)
    lo = -(width // 2)
    interval = list(range(lo, lo + max(width, 1)))
    shift = behrend_set(len(interval), k)
    S = [interval[v - 1] for v in sorted(shift)]
    c = n // k
    cells: set[tuple[int, ...]] = set()
    m = k - 1
    for s in product(S, repeat=m):
        a = tuple(
            c + sum(scaled_inv[i][j] * s[j] for j in range(m)) for i in range(m)
        )
        if any(x.denominator != 1 for x in a):
            raise InternalCheckError("non-integral lattice point")
        a = tuple(int(x) for x in a)
        first = n - sum(a)
        point = (first,) + a
        if first >= 0 and all(x >= 0 for x in a):
            cells.add(point)
    if not is_fujimura(cells, n):
        raise InternalCheckError(f"circulant construction failed for n={n}, k={k}")
    return frozenset(cells)


def simplex_image_progressions(n: int, k: int, samples: int, seed: int) -> bool:
    """Check that dropping the first coordinate and applying M sends sampled
    simplices to tuples whose every coordinate runs through an arithmetic
    progression 0, r, 2r, ..., (k-1)r."""
    import random

    rng = random.Random(seed)
    M = _circulant(k)
    m = k - 1
    for _ in range(samples):
        r = rng.randint(1, max(1, n // 2))
        base = [0] * k
        rest = n - r
        for i in range(k):
            base[i] = rng.randint(0, rest)
            rest -= base[i]
        base[0] += rest
        pts = [tuple(base[j] + (r if j == i else 0) for j in range(k)) for i in range(k)]
        tails = [p[1:] for p in pts]
        images = [
            tuple(sum(M[i][j] * t[j] for j in range(m)) for i in range(m))
            for t in tails
        ]
        for coord in range(m):
            vals = sorted(img[coord] for img in images)
            diffs = {b - a for a, b in zip(vals, vals[1:])}
            if len(diffs) != 1 or 0 in diffs:
                return False
    return True


# ---------------------------------------------------------------------------
# Sphere-based Moser lower bounds


def sphere_lb(n: int, i: int) -> PointSet:
    """The sphere S_{i,n} itself (always a geometric-line-free set)."""
    if not 1 <= i <= n:
        raise ValueError("need 1 <= i <= n")
    return sphere_members(i, "all", n)


def semisphere_lb(n: int, i: int, parity: str = "even") -> PointSet:
    """S_{i-1,n} together with one parity class of S_{i,n}."""
    if not 1 <= i <= n:
        raise ValueError("need 1 <= i <= n")
    A = PointSet(n, 3, sphere_mask(n, i - 1) | sphere_mask(n, i, parity))
    expected = math.comb(n + 1, i) * 2 ** (i - 1)
    if A.size != expected:
        raise InternalCheckError("semisphere size mismatch")
    return A


def best_semisphere(n: int) -> tuple[int, int]:
    """(best i, size) over all semisphere unions."""
    best = max(
        ((math.comb(n + 1, i) * 2 ** (i - 1), i) for i in range(1, n + 1)),
    )
    return best[1], best[0]


_SHELL_EXTRAS: dict[tuple[int, int], tuple[str, ...]] = {
    (4, 3): ("1111", "3331", "3333"),
    (5, 4): ("11111", "11333", "33311", "33331"),
}


def sphere_shell_lb(n: int, i: int, extras: tuple[str, ...] | None = None) -> PointSet:
    """Semisphere union plus a sparse shell A' one sphere further out.

    A' must have all pairwise Hamming distances >= 3, except distance-1
    pairs whose midpoint then forces the parity class of S_{i,n} kept in
    the set; the full result is verified by a complete line scan.
    """
    if extras is None:
        if (n, i) not in _SHELL_EXTRAS:
            raise ValueError(f"no bundled shell for (n={n}, i={i}); pass extras")
        extras = _SHELL_EXTRAS[(n, i)]
    shell = [Word.from_text(t, 3) for t in extras]
    outer = sphere_mask(n, i + 1)
    for w in shell:
        if not outer >> w.index & 1:
            raise ValueError(f"shell point {w.text} is not on sphere {i + 1}")
    midpoint_parities = set()
    for w1, w2 in combinations(shell, 2):
        d = sum(a != b for a, b in zip(w1.digits, w2.digits))
        if d == 2:
            raise ValueError(f"shell points {w1.text}, {w2.text} at distance 2")
        if d == 1:
            mid = tuple(2 if a != b else a for a, b in zip(w1.digits, w2.digits))
            ones = sum(1 for x in mid if x == 1)
            midpoint_parities.add("odd" if ones % 2 else "even")
    if len(midpoint_parities) > 1:
        raise ValueError("shell distance-1 midpoints have mixed parity")
    keep = "even" if midpoint_parities == {"odd"} else (
        "odd" if midpoint_parities == {"even"} else "even"
    )
    bits = sphere_mask(n, i - 1) | sphere_mask(n, i, keep)
    for w in shell:
        bits |= 1 << w.index
    A = PointSet(n, 3, bits)
    if not is_moser(A):
        raise InternalCheckError("shell construction contains a geometric line")
    return A


# ---------------------------------------------------------------------------
# Coding-theoretic bounds


def lexicode(n: int, d: int) -> list[int]:
    """Greedy lexicographic binary code of length n, min distance d."""
    code: list[int] = []
    for v in range(1 << n):
        if all(bin(v ^ c).count("1") >= d for c in code):
            code.append(v)
    return code


def coding_bound(n: int, k_range=None, table: CodeTable | None = None,
                 want_witness: bool = False):
    """max over k of sum_j C(n,j) * A(n-j, k-j+1), plus an optional witness.

    The witness uses explicit codes (full, parity, and greedy lexicographic
    codes for higher distance) and is only returned when those codes reach
    the tabulated sizes level by level.
    """
    table = table or CodeTable()
    if k_range is None:
        k_range = range(0, n)
    per_k = {}
    for k in k_range:
        try:
            per_k[k] = sum(
                math.comb(n, j) * table.get(n - j, k - j + 1) for j in range(k + 1)
            )
        except KeyError:
            continue
    if not per_k:
        raise ValueError("no admissible k for this n")
    best_k = max(per_k, key=lambda k: (per_k[k], -k))
    result = {"n": n, "bound": per_k[best_k], "k": best_k, "per_k": per_k}
    if want_witness:
        result["witness"] = _coding_witness(n, best_k, table)
    return result


def _coding_witness(n: int, k: int, table: CodeTable) -> PointSet | None:
    cube_cells(n, 3)
    codes = {}
    for j in range(k + 1):
        m, d = n - j, k - j + 1
        code = [v for v in range(1 << m)] if d == 1 else (
            [v for v in range(1 << m) if bin(v).count("1") % 2 == 0] if d == 2
            else lexicode(m, d)
        )
        if len(code) != table.get(m, d):
            return None
        codes[j] = code
    bits = 0
    for j in range(k + 1):
        for positions in combinations(range(n), j):
            pos_set = set(positions)
            free = [p for p in range(n) if p not in pos_set]
            for cw in codes[j]:
                digits = [2] * n
                for t, p in enumerate(free):
                    digits[p] = 3 if cw >> t & 1 else 1
                bits |= 1 << index_of_digits(digits, 3)
    A = PointSet(n, 3, bits)
    if A.size != sum(math.comb(n, j) * len(codes[j]) for j in range(k + 1)):
        raise InternalCheckError("coding witness size mismatch")
    return A


# ---------------------------------------------------------------------------
# Simplex-level Moser sets and augmentation


def ab_moser(B, n: int) -> PointSet:
    """The cell union of an isosceles-free simplex set (verified)."""
    if not is_isosceles_free(B):
        raise ValueError("the simplex set contains an isosceles triple")
    return gamma_union(B, n, 3)


def check_augmented_b(B, extras, n: int) -> list[str]:
    """Validate an isosceles-free set plus partial extra cells.

    Returns a list of violations (empty when valid): the base cells must
    be isosceles-free; each extra word's cell may appear only as the lower
    foot of degenerate triples whose head is a base cell, and then no two
    extras of that cell may sit at Hamming distance 2r.
    """
    errors = []
    base = set(map(tuple, B))
    extras = list(extras)
    extra_words = [Word.from_text(t, 3) for t in extras]
    if len(set(extras)) != len(extras):
        errors.append("duplicate extra points")
    by_cell: dict[tuple[int, int, int], list[Word]] = {}
    for w in extra_words:
        if w.n != n:
            errors.append(f"extra point {w.text} has wrong length")
            continue
        cell = tuple(sorted_counts(w))
        by_cell.setdefault(cell, []).append(w)
    if any(c in base for c in by_cell):
        errors.append("extra points fall inside fully selected cells")
    rules: dict[tuple[int, int, int], set[int]] = {c: set() for c in by_cell}
    all_cells = base | set(by_cell)
    for f1, f2, head in isosceles_triples(all_cells):
        involved_extra = [c for c in (f1, f2, head) if c in by_cell]
        if not involved_extra:
            errors.append(f"isosceles triple {f1}, {f2}, {head} in base cells")
        elif f1 == f2 and f1 in by_cell and head in base:
            r = f1[0] - head[0]
            rules[f1].add(2 * r)
        else:
            errors.append(
                f"extra cell participates in forbidden triple {f1}, {f2}, {head}"
            )
    for cell, words in by_cell.items():
        for w1, w2 in combinations(words, 2):
            d = sum(a != b for a, b in zip(w1.digits, w2.digits))
            if d in rules.get(cell, ()):  # the degenerate-pair distances
                errors.append(
                    f"extras {w1.text}, {w2.text} at forbidden distance {d}"
                )
    return errors


def sorted_counts(w: Word) -> tuple[int, int, int]:
    counts = [0, 0, 0]
    for d in w.digits:
        counts[d - 1] += 1
    return tuple(counts)


def augment_ab(B, extras, n: int) -> PointSet:
    """Cell union of B plus explicit extra words, verified before assembly."""
    errors = check_augmented_b(B, extras, n)
    if errors:
        raise ValueError("; ".join(errors))
    A = gamma_union(B, n, 3)
    for t in extras:
        A = A.with_index(Word.from_text(t, 3).index)
    return A


N5_CELLS: tuple[tuple[int, int, int], ...] = (
    (0, 0, 5), (0, 2, 3), (1, 1, 3), (1, 2, 2), (2, 2, 1), (3, 1, 1),
    (3, 2, 0), (5, 0, 0),
)
N5_EXTRAS = ("13333", "11113")

N10_CELLS: tuple[tuple[int, int, int], ...] = (
    (0, 0, 10), (0, 2, 8), (0, 3, 7), (0, 4, 6), (1, 4, 5), (2, 1, 7),
    (2, 3, 5), (3, 2, 5), (3, 3, 4), (3, 4, 3), (4, 4, 2), (5, 1, 4),
    (5, 3, 2), (6, 2, 2), (6, 3, 1), (6, 4, 0), (8, 1, 1), (9, 0, 1),
    (9, 1, 0),
)
N10_EXTRAS = (
    "1111133333", "1111313333", "1113113333", "1133331113", "1133331131",
    "1133331311", "3311333111", "3313133111", "3313313111", "3331111133",
    "3331111313", "3331111331",
)


def neighbor_bound(cell: tuple[int, int, int]) -> Fraction:
    """Size cap |cell|/(1+max(a,c)) for subsets with no 1<->3 interchange pair."""
    a, _, c = cell
    return Fraction(cell_size(cell), 1 + max(a, c))


# ---------------------------------------------------------------------------
# Higher alphabets


def layer_set_k4(n: int) -> PointSet:
    """Words over [4]^n whose count of extreme letters (1 and 4) is n//2."""
    q = n // 2
    bits = 0
    for idx in range(cube_cells(n, 4)):
        counts = cell_of_index(idx, n, 4)
        if counts[0] + counts[3] == q:
            bits |= 1 << idx
    return PointSet(n, 4, bits)


def value_set_k5(n: int) -> PointSet:
    """Words over [5]^n selected through a progression-free value map.

    The per-letter values 1,2,3,2,1 make the first three points of any
    geometric line hit values in arithmetic progression, so selecting
    words whose value lies in a 3-AP-free set leaves no line.
    """
    vals = {1: 1, 2: 2, 3: 3, 4: 2, 5: 1}
    lo, hi = n, 3 * n
    free = behrend_set(hi - lo + 1, 3)
    targets = {lo - 1 + s for s in free}
    bits = 0
    for idx in range(cube_cells(n, 5)):
        rest, total = idx, 0
        for _ in range(n):
            total += vals[rest % 5 + 1]
            rest //= 5
        if total in targets:
            bits |= 1 << idx
    return PointSet(n, 5, bits)


def doubled_set_k6(n: int, base: PointSet | None = None) -> PointSet:
    """Pull back a line-free subset of [3]^n through 1,2,3,4,5,6 -> 1,2,3,3,2,1."""
    if base is None:
        base = gamma_union(dhj_cells(n), n, 3)
    if (base.n, base.k) != (n, 3):
        raise ValueError("base set must live in [3]^n")
    digit_map = {1: 1, 2: 2, 3: 3, 4: 3, 5: 2, 6: 1}
    bits = 0
    for idx in range(cube_cells(n, 6)):
        rest = idx
        mapped = 0
        p = 1
        for _ in range(n):
            mapped += (digit_map[rest % 6 + 1] - 1) * p
            rest //= 6
            p *= 3
        if base.contains_index(mapped):
            bits |= 1 << idx
    A = PointSet(n, 6, bits)
    if A.size != 2**n * base.size:
        raise InternalCheckError("doubling pullback size mismatch")
    return A


def higher_k(n: int, k: int) -> PointSet:
    if k == 4:
        return layer_set_k4(n)
    if k == 5:
        return value_set_k5(n)
    if k == 6:
        return doubled_set_k6(n)
    raise ValueError("higher-alphabet constructions cover k in {4, 5, 6}")


# ---------------------------------------------------------------------------
# The sixteen rigid 4D sets with statistics (6,12,18,4,0)


def good_set(x: int, y: int, z: int, w: int) -> PointSet:
    """The unique Moser set in [3]^4 with statistics (6,12,18,4,0) whose
    one-letter points are x222, 2y22, 22z2, 222w (x,y,z,w in {1,3})."""
    for v in (x, y, z, w):
        if v not in (1, 3):
            raise ValueError("type letters must be 1 or 3")
    X, Y, Z, W = 4 - x, 4 - y, 4 - z, 4 - w
    texts = {f"{x}222", f"2{y}22", f"22{z}2", f"222{w}"}
    excluded2 = {
        f"{x}{y}22", f"{x}2{z}2", f"{x}22{w}", f"2{y}{z}2", f"2{y}2{w}",
        f"22{z}{w}",
    }
    for word in sphere_members(2, "all", 4).texts():
        if word not in excluded2:
            texts.add(word)
    texts.update({
        f"{x}{Y}{Z}2", f"{x}{Y}2{W}", f"{x}2{Z}{W}",
        f"{X}{y}{Z}2", f"{X}{y}2{W}", f"2{y}{Z}{W}",
        f"{X}{Y}{z}2", f"{X}2{z}{W}", f"2{Y}{z}{W}",
        f"{X}{Y}2{w}", f"{X}2{Z}{w}", f"2{Y}{Z}{w}",
    })
    texts.update({
        f"{x}{y}{z}{w}", f"{x}{y}{z}{W}", f"{x}{y}{Z}{w}", f"{x}{Y}{z}{w}",
        f"{X}{y}{z}{w}", f"{X}{Y}{Z}{W}",
    })
    A = PointSet.from_texts(sorted(texts), 3, n=4)
    from .verify import statistics

    if statistics(A).entries != (6, 12, 18, 4, 0) or not is_moser(A):
        raise InternalCheckError("good-set construction failed")
    return A


# ---------------------------------------------------------------------------
# Asymptotic parameters


@dataclass(frozen=True)
class AsymptoticParams:
    """Constants of the progression-free asymptotic lower bound."""

    k: int
    ell: int
    alpha: float
    beta: Fraction

    @classmethod
    def for_k(cls, k: int) -> "AsymptoticParams":
        if k < 3:
            raise ValueError("need k >= 3")
        ell = 1
        while 2 * k > 2 ** (ell + 1):
            ell += 1
        assert 2 * k > 2**ell and k > 2 ** (ell - 1)
        log2_base_k = math.log(2) / math.log(k)
        alpha = log2_base_k ** (1 - 1 / ell) * ell * 2 ** ((ell - 1) / 2 - 1 / ell)
        return cls(k=k, ell=ell, alpha=alpha, beta=Fraction(k - 1, 2 * ell))
