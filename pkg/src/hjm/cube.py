"""The cube [k]^n: words, lines, cells, spheres and slices.

Words are encoded as base-k integers with digit 1 mapped to numeral 0, so
the word whose text form is ``d_0 d_1 ... d_{n-1}`` has index
``sum((d_i - 1) * k**i)``.  All set-valued objects are bit arrays over
these indices, which keeps membership O(1) and lets searches work on
plain integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator

WILD = "x"
ANTIWILD = "X"

#: Hard cap on the number of cells of an enumerable cube (index width).
MAX_CELLS = 1 << 48

#: Cap on cubes materialised as bit arrays (PointSet); beyond this only
#: simplex-level objects are supported.
MAX_POINTSET_CELLS = 1 << 26


class DimensionError(ValueError):
    """Requested cube exceeds the configured index width."""


def cube_cells(n: int, k: int) -> int:
    if n < 0 or k < 1:
        raise ValueError(f"invalid cube parameters n={n}, k={k}")
    cells = k**n
    if cells > MAX_CELLS:
        raise DimensionError(f"[{k}]^{n} has {cells} cells, above the 2^48 cap")
    return cells


def _check_pointset_size(n: int, k: int) -> int:
    cells = cube_cells(n, k)
    if cells > MAX_POINTSET_CELLS:
        raise DimensionError(
            f"[{k}]^{n} is too large to materialise as a bit array "
            f"({cells} cells); work at the simplex level instead"
        )
    return cells


def index_of_digits(digits: Iterable[int], k: int) -> int:
    idx = 0
    for i, d in enumerate(digits):
        if not 1 <= d <= k:
            raise ValueError(f"digit {d} out of range 1..{k}")
        idx += (d - 1) * k**i
    return idx


def digits_of_index(idx: int, n: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(idx % k + 1)
        idx //= k
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A length-n word over the alphabet {1..k}."""

    n: int
    k: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if len(self.digits) != self.n:
            raise ValueError("digit count does not match n")
        if any(not 1 <= d <= self.k for d in self.digits):
            raise ValueError("digit out of range")

    @classmethod
    def from_index(cls, idx: int, n: int, k: int) -> "Word":
        return cls(n, k, digits_of_index(idx, n, k))

    @classmethod
    def from_text(cls, text: str, k: int) -> "Word":
        return cls(len(text), k, tuple(int(c) for c in text))

    @property
    def index(self) -> int:
        return index_of_digits(self.digits, self.k)

    @property
    def text(self) -> str:
        return "".join(str(d) for d in self.digits)

    def __str__(self) -> str:
        return self.text


def hamming(w1: Word, w2: Word) -> int:
    if (w1.n, w1.k) != (w2.n, w2.k):
        raise ValueError("dimension mismatch")
    return sum(a != b for a, b in zip(w1.digits, w2.digits))


def hamming_index(i1: int, i2: int, n: int, k: int) -> int:
    d = 0
    for _ in range(n):
        if i1 % k != i2 % k:
            d += 1
        i1 //= k
        i2 //= k
    return d


def enumerate_words(n: int, k: int) -> Iterator[Word]:
    cells = cube_cells(n, k)
    for idx in range(cells):
        yield Word.from_index(idx, n, k)


@dataclass(frozen=True)
class PointSet:
    """A subset of [k]^n stored as a k^n-bit array (immutable)."""

    n: int
    k: int
    bits: int

    def __post_init__(self):
        cells = _check_pointset_size(self.n, self.k)
        if self.bits < 0 or self.bits >> cells:
            raise ValueError("bit array out of range for this cube")

    @classmethod
    def empty(cls, n: int, k: int) -> "PointSet":
        return cls(n, k, 0)

    @classmethod
    def full(cls, n: int, k: int) -> "PointSet":
        return cls(n, k, (1 << cube_cells(n, k)) - 1)

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int, k: int) -> "PointSet":
        bits = 0
        for i in indices:
            bits |= 1 << i
        return cls(n, k, bits)

    @classmethod
    def from_words(cls, words: Iterable[Word]) -> "PointSet":
        words = list(words)
        if not words:
            raise ValueError("cannot infer dimensions from an empty word list")
        n, k = words[0].n, words[0].k
        return cls.from_indices((w.index for w in words), n, k)

    @classmethod
    def from_texts(cls, texts: Iterable[str], k: int, n: int | None = None) -> "PointSet":
        texts = list(texts)
        if n is None:
            if not texts:
                raise ValueError("need n for an empty set")
            n = len(texts[0])
        return cls.from_indices(
            (index_of_digits((int(c) for c in t), k) for t in texts), n, k
        )

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.size

    def contains_index(self, idx: int) -> bool:
        return bool(self.bits >> idx & 1)

    def __contains__(self, w: Word) -> bool:
        return self.contains_index(w.index)

    def with_index(self, idx: int) -> "PointSet":
        return PointSet(self.n, self.k, self.bits | 1 << idx)

    def without_index(self, idx: int) -> "PointSet":
        return PointSet(self.n, self.k, self.bits & ~(1 << idx))

    def union(self, other: "PointSet") -> "PointSet":
        self._check_same(other)
        return PointSet(self.n, self.k, self.bits | other.bits)

    def intersection(self, other: "PointSet") -> "PointSet":
        self._check_same(other)
        return PointSet(self.n, self.k, self.bits & other.bits)

    def difference(self, other: "PointSet") -> "PointSet":
        self._check_same(other)
        return PointSet(self.n, self.k, self.bits & ~other.bits)

    def complement(self) -> "PointSet":
        return PointSet(self.n, self.k, ~self.bits & (1 << cube_cells(self.n, self.k)) - 1)

    def _check_same(self, other: "PointSet") -> None:
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError("dimension mismatch")

    def indices(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def words(self) -> Iterator[Word]:
        for idx in self.indices():
            yield Word.from_index(idx, self.n, self.k)

    def texts(self) -> list[str]:
        """Sorted digit strings; the canonical text form used in certificates."""
        return sorted(w.text for w in self.words())


# ---------------------------------------------------------------------------
# Lines


@dataclass(frozen=True)
class LineTemplate:
    """A wildcard word; instantiating the wildcards yields the k line points.

    ``WILD`` is substituted with i and ``ANTIWILD`` with k+1-i, so a
    template without ANTIWILD describes a combinatorial line and any
    template describes a geometric one.
    """

    n: int
    k: int
    symbols: tuple
    kind: str  # "combinatorial" | "geometric"

    def __post_init__(self):
        wilds = [s for s in self.symbols if s in (WILD, ANTIWILD)]
        if not wilds:
            raise ValueError("a line template needs at least one wildcard")
        if self.kind == "combinatorial" and ANTIWILD in self.symbols:
            raise ValueError("combinatorial templates cannot use the reflected wildcard")
        if self.kind not in ("combinatorial", "geometric"):
            raise ValueError(f"unknown line kind {self.kind!r}")

    @property
    def text(self) -> str:
        return "".join(str(s) for s in self.symbols)

    def point(self, i: int) -> Word:
        if not 1 <= i <= self.k:
            raise ValueError("substitution value out of range")
        digits = tuple(
            i if s == WILD else self.k + 1 - i if s == ANTIWILD else s
            for s in self.symbols
        )
        return Word(self.n, self.k, digits)

    def point_index(self, i: int) -> int:
        return self.point(i).index

    def indices(self) -> tuple[int, ...]:
        return tuple(self.point_index(i) for i in range(1, self.k + 1))


def line_points(t: LineTemplate) -> list[Word]:
    return [t.point(i) for i in range(1, t.k + 1)]


def enumerate_lines(n: int, k: int, kind: str) -> Iterator[LineTemplate]:
    """All lines of the given kind, each geometric line exactly once.

    A geometric template and its wildcard-swapped mate describe the same
    point set traversed in opposite directions; we keep the one whose
    first wildcard is WILD.
    """
    if n < 1:
        raise ValueError("lines need n >= 1")
    cube_cells(n, k)
    letters = tuple(range(1, k + 1))
    if kind == "combinatorial":
        alphabet = letters + (WILD,)
    elif kind == "geometric":
        alphabet = letters + (WILD, ANTIWILD)
    else:
        raise ValueError(f"unknown line kind {kind!r}")
    for symbols in product(alphabet, repeat=n):
        first_wild = next((s for s in symbols if s in (WILD, ANTIWILD)), None)
        if first_wild is None:
            continue
        if kind == "geometric" and first_wild == ANTIWILD:
            continue
        yield LineTemplate(n, k, symbols, kind)


@lru_cache(maxsize=None)
def line_index_table(n: int, k: int, kind: str) -> tuple[tuple[int, ...], ...]:
    """Point-index tuples of every line; precomputed once per (n, k, kind)."""
    count = line_count(n, k, kind)
    if count > 20_000_000:
        raise DimensionError(f"line table for [{k}]^{n} would have {count} entries")
    return tuple(t.indices() for t in enumerate_lines(n, k, kind))


def line_count(n: int, k: int, kind: str) -> int:
    if kind == "combinatorial":
        return (k + 1) ** n - k**n
    if kind == "geometric":
        return ((k + 2) ** n - k**n) // 2
    raise ValueError(f"unknown line kind {kind!r}")


# ---------------------------------------------------------------------------
# Cells and the simplex grid


def simplex_points(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All tuples of k nonnegative integers summing to n, lexicographic."""
    if k == 1:
        yield (n,)
        return
    for a in range(n + 1):
        for rest in simplex_points(n - a, k - 1):
            yield (a,) + rest


def simplex_size(n: int, k: int) -> int:
    return math.comb(n + k - 1, k - 1)


def cell_of(w: Word) -> tuple[int, ...]:
    counts = [0] * w.k
    for d in w.digits:
        counts[d - 1] += 1
    return tuple(counts)


def cell_of_index(idx: int, n: int, k: int) -> tuple[int, ...]:
    counts = [0] * k
    for _ in range(n):
        counts[idx % k] += 1
        idx //= k
    return tuple(counts)


def cell_size(point: tuple[int, ...]) -> int:
    """Exact multinomial n!/(a_1!...a_k!)."""
    if any(a < 0 for a in point):
        raise ValueError("negative cell coordinate")
    n = sum(point)
    out = math.factorial(n)
    for a in point:
        out //= math.factorial(a)
    return out


def cell_members(point: tuple[int, ...], k: int | None = None) -> Iterator[Word]:
    """All words with the given letter counts."""
    if k is None:
        k = len(point)
    if len(point) != k:
        raise ValueError("cell tuple length must equal k")
    n = sum(point)
    cube_cells(n, k)

    def rec(counts: list[int], prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for letter in range(1, k + 1):
            if counts[letter - 1]:
                counts[letter - 1] -= 1
                prefix.append(letter)
                yield from rec(counts, prefix)
                prefix.pop()
                counts[letter - 1] += 1

    for digits in rec(list(point), []):
        yield Word(n, k, digits)


# ---------------------------------------------------------------------------
# Spheres (k = 3 only)


@dataclass(frozen=True)
class SphereIndex:
    """Sphere coordinates of a word: i counts the non-2 letters."""

    i: int
    parity: str  # "odd" | "even" | "all"


def sphere_of(w: Word) -> SphereIndex:
    if w.k != 3:
        raise ValueError("spheres are defined for k = 3")
    i = sum(1 for d in w.digits if d != 2)
    if i == 0:
        return SphereIndex(0, "all")
    ones = sum(1 for d in w.digits if d == 1)
    return SphereIndex(i, "odd" if ones % 2 else "even")


@lru_cache(maxsize=None)
def sphere_mask(n: int, i: int, parity: str = "all") -> int:
    """Bit mask of S_{i,n} (optionally one parity class) in [3]^n."""
    if not 0 <= i <= n:
        raise ValueError(f"sphere index {i} out of range for n={n}")
    if parity not in ("odd", "even", "all"):
        raise ValueError(f"unknown parity {parity!r}")
    if i == 0 and parity != "all":
        raise ValueError("S_0 is a single point and has no parity split")
    mask = 0
    for idx in range(3**n):
        rest, non2, ones = idx, 0, 0
        for _ in range(n):
            d = rest % 3
            rest //= 3
            if d != 1:  # numeral 1 encodes the letter 2
                non2 += 1
            if d == 0:
                ones += 1
        if non2 != i:
            continue
        if parity == "odd" and ones % 2 == 0:
            continue
        if parity == "even" and ones % 2 == 1:
            continue
        mask |= 1 << idx
    return mask


def sphere_members(i: int, parity: str, n: int) -> PointSet:
    return PointSet(n, 3, sphere_mask(n, i, parity))


# ---------------------------------------------------------------------------
# Slices


def _split_index(idx: int, axis: int, n: int, k: int) -> tuple[int, int]:
    """Return (digit at axis, index of the word with that digit removed)."""
    low = idx % k**axis
    rest = idx // k**axis
    d = rest % k
    high = rest // k
    return d + 1, low + high * k**axis


def _insert_index(inner_idx: int, axis: int, value: int, k: int) -> int:
    low = inner_idx % k**axis
    high = inner_idx // k**axis
    return low + (value - 1) * k**axis + high * k ** (axis + 1)


def slice_extract(A: PointSet, axis: int, value: int) -> PointSet:
    """The [k]^{n-1} set obtained by fixing coordinate `axis` to `value`."""
    if not 0 <= axis < A.n:
        raise ValueError("axis out of range")
    if not 1 <= value <= A.k:
        raise ValueError("slice value out of range")
    bits = 0
    for idx in A.indices():
        d, inner = _split_index(idx, axis, A.n, A.k)
        if d == value:
            bits |= 1 << inner
    return PointSet(A.n - 1, A.k, bits)


def slice_embed(inner: PointSet, axis: int, value: int) -> PointSet:
    """Embed a [k]^{n-1} set as the (axis, value) slice of [k]^n."""
    n = inner.n + 1
    if not 0 <= axis < n:
        raise ValueError("axis out of range")
    if not 1 <= value <= inner.k:
        raise ValueError("slice value out of range")
    bits = 0
    for idx in inner.indices():
        bits |= 1 << _insert_index(idx, axis, value, inner.k)
    return PointSet(n, inner.k, bits)
