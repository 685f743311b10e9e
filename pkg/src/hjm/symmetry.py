"""Symmetry groups of [k]^n and orbit machinery.

The combinatorial group (order k!·n!) permutes coordinates and the
alphabet; the geometric group (order 2^n·n!) permutes coordinates and
reflects individual coordinates via x -> k+1-x.  Canonical forms are
computed by full orbit minimisation: the canonical representative is the
set whose membership sequence b_0, b_1, ... (in word-index order) is
lexicographically least over the orbit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Iterable, Iterator

import numpy as np

from .cube import PointSet, Word, cube_cells, digits_of_index

#: Refuse full orbit iteration above this group order.
MAX_GROUP_ORDER = 50_000


class GroupTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class GroupElement:
    """One symmetry of [k]^n.

    The action on a word w is: reflect/relabel each digit in place, then
    move the digit at position j to position coord_perm[j].
    """

    n: int
    k: int
    kind: str  # "combinatorial" | "geometric"
    coord_perm: tuple[int, ...]
    alphabet_perm: tuple[int, ...] | None = None  # combinatorial: letter d -> perm[d-1]
    reflect_mask: tuple[int, ...] | None = None  # geometric: per original coordinate

    def __post_init__(self):
        if sorted(self.coord_perm) != list(range(self.n)):
            raise ValueError("coord_perm is not a permutation")
        if self.kind == "combinatorial":
            if self.alphabet_perm is None or sorted(self.alphabet_perm) != list(
                range(1, self.k + 1)
            ):
                raise ValueError("combinatorial elements need an alphabet permutation")
        elif self.kind == "geometric":
            if self.reflect_mask is None or len(self.reflect_mask) != self.n:
                raise ValueError("geometric elements need a reflection mask")
        else:
            raise ValueError(f"unknown group kind {self.kind!r}")

    @classmethod
    def identity(cls, n: int, k: int, kind: str) -> "GroupElement":
        if kind == "combinatorial":
            return cls(n, k, kind, tuple(range(n)), tuple(range(1, k + 1)), None)
        return cls(n, k, kind, tuple(range(n)), None, (0,) * n)

    def _digit_action(self, j: int, d: int) -> int:
        if self.kind == "combinatorial":
            return self.alphabet_perm[d - 1]
        return self.k + 1 - d if self.reflect_mask[j] else d

    def apply(self, w: Word) -> Word:
        if (w.n, w.k) != (self.n, self.k):
            raise ValueError("dimension mismatch")
        out = [0] * self.n
        for j, d in enumerate(w.digits):
            out[self.coord_perm[j]] = self._digit_action(j, d)
        return Word(self.n, self.k, tuple(out))

    def compose(self, other: "GroupElement") -> "GroupElement":
        """self after other (apply ``other`` first)."""
        if (self.n, self.k, self.kind) != (other.n, other.k, other.kind):
            raise ValueError("cannot compose mismatched elements")
        perm = tuple(self.coord_perm[other.coord_perm[j]] for j in range(self.n))
        if self.kind == "combinatorial":
            alpha = tuple(self.alphabet_perm[other.alphabet_perm[d - 1] - 1] for d in range(1, self.k + 1))
            return GroupElement(self.n, self.k, self.kind, perm, alpha, None)
        mask = tuple(
            other.reflect_mask[j] ^ self.reflect_mask[other.coord_perm[j]]
            for j in range(self.n)
        )
        return GroupElement(self.n, self.k, self.kind, perm, None, mask)

    def inverse(self) -> "GroupElement":
        inv_perm = [0] * self.n
        for j, p in enumerate(self.coord_perm):
            inv_perm[p] = j
        if self.kind == "combinatorial":
            inv_alpha = [0] * self.k
            for d in range(1, self.k + 1):
                inv_alpha[self.alphabet_perm[d - 1] - 1] = d
            return GroupElement(self.n, self.k, self.kind, tuple(inv_perm), tuple(inv_alpha), None)
        mask = tuple(self.reflect_mask[inv_perm[i]] for i in range(self.n))
        return GroupElement(self.n, self.k, self.kind, tuple(inv_perm), None, mask)

    def index_map(self) -> list[int]:
        """idx -> image idx, for the whole cube (cached externally)."""
        n, k = self.n, self.k
        cells = cube_cells(n, k)
        out = [0] * cells
        kpow = [k**j for j in range(n)]
        for idx in range(cells):
            digits = digits_of_index(idx, n, k)
            new = 0
            for j, d in enumerate(digits):
                new += (self._digit_action(j, d) - 1) * kpow[self.coord_perm[j]]
            out[idx] = new
        return out


def group_order(n: int, k: int, kind: str) -> int:
    if kind == "combinatorial":
        return math.factorial(k) * math.factorial(n)
    if kind == "geometric":
        return 2**n * math.factorial(n)
    raise ValueError(f"unknown group kind {kind!r}")


def group_elements(n: int, k: int, kind: str) -> Iterator[GroupElement]:
    order = group_order(n, k, kind)
    if order > MAX_GROUP_ORDER:
        raise GroupTooLargeError(f"{kind} group of [{k}]^{n} has order {order}")
    if kind == "combinatorial":
        for perm in permutations(range(n)):
            for alpha in permutations(range(1, k + 1)):
                yield GroupElement(n, k, kind, perm, tuple(alpha), None)
    else:
        for perm in permutations(range(n)):
            for mask in product((0, 1), repeat=n):
                yield GroupElement(n, k, kind, perm, None, mask)


def apply(g: GroupElement, w: Word) -> Word:
    return g.apply(w)


def apply_set(g: GroupElement, A: PointSet) -> PointSet:
    if (A.n, A.k) != (g.n, g.k):
        raise ValueError("dimension mismatch")
    imap = _index_map_cached(g)
    bits = 0
    for idx in A.indices():
        bits |= 1 << imap[idx]
    return PointSet(A.n, A.k, bits)


_INDEX_MAP_CACHE: dict[GroupElement, list[int]] = {}


def _index_map_cached(g: GroupElement) -> list[int]:
    m = _INDEX_MAP_CACHE.get(g)
    if m is None:
        m = g.index_map()
        _INDEX_MAP_CACHE[g] = m
    return m


# ---------------------------------------------------------------------------
# Orbit minimisation
#
# The canonical key of a set is the integer whose bit (K-1-i) stores
# membership of word index i; its integer order is exactly lexicographic
# order on the membership sequence b_0, b_1, ...  Group images are taken
# with chunked lookup tables so that whole arrays of sets can be
# canonicalised at once.

_CHUNK = 9


@lru_cache(maxsize=32)
def _group_index_maps(n: int, k: int, kind: str) -> list[list[int]]:
    return [g.index_map() for g in group_elements(n, k, kind)]


def _reversed_chunk_tables(index_maps: list[list[int]], cells: int) -> list[list[list[int]]]:
    """tables[g][chunk][value] -> contribution to the reversed-key integer."""
    nchunks = (cells + _CHUNK - 1) // _CHUNK
    tables = []
    for imap in index_maps:
        per_g = []
        for c in range(nchunks):
            base = c * _CHUNK
            width = min(_CHUNK, cells - base)
            tab = [0] * (1 << width)
            for v in range(1 << width):
                acc = 0
                rest = v
                while rest:
                    low = rest & -rest
                    b = low.bit_length() - 1
                    rest ^= low
                    acc |= 1 << (cells - 1 - imap[base + b])
                tab[v] = acc
            per_g.append(tab)
        tables.append(per_g)
    return tables


@lru_cache(maxsize=16)
def _canonical_tables(n: int, k: int, kind: str):
    cells = cube_cells(n, k)
    maps = _group_index_maps(n, k, kind)
    return _reversed_chunk_tables(maps, cells), cells


def _reverse_bits(value: int, cells: int) -> int:
    out = 0
    rest = value
    while rest:
        low = rest & -rest
        b = low.bit_length() - 1
        rest ^= low
        out |= 1 << (cells - 1 - b)
    return out


def canonical_key(A: PointSet, kind: str) -> int:
    tables, cells = _canonical_tables(A.n, A.k, kind)
    chunks = []
    bits = A.bits
    while bits or not chunks:
        chunks.append(bits & ((1 << _CHUNK) - 1))
        bits >>= _CHUNK
    nchunks = (cells + _CHUNK - 1) // _CHUNK
    chunks += [0] * (nchunks - len(chunks))
    best = None
    for per_g in tables:
        acc = 0
        for c, v in enumerate(chunks):
            if v:
                acc |= per_g[c][v]
        if best is None or acc < best:
            best = acc
    return best


def canonical_form(A: PointSet, kind: str) -> PointSet:
    """The lexicographically least bit array in the orbit of A."""
    cells = cube_cells(A.n, A.k)
    return PointSet(A.n, A.k, _reverse_bits(canonical_key(A, kind), cells))


# ---------------------------------------------------------------------------
# Vectorised canonical keys for masks that fit in 63 bits


def _numpy_tables(n: int, k: int, kind: str, index_maps: list[list[int]] | None = None,
                  cells: int | None = None):
    if cells is None:
        cells = cube_cells(n, k)
    if cells > 62:
        raise ValueError("numpy canonical path needs <= 62 cells")
    if index_maps is None:
        index_maps = _group_index_maps(n, k, kind)
    nchunks = (cells + _CHUNK - 1) // _CHUNK
    G = len(index_maps)
    tabs = np.zeros((G, nchunks, 1 << _CHUNK), dtype=np.int64)
    for gi, imap in enumerate(index_maps):
        for c in range(nchunks):
            base = c * _CHUNK
            width = min(_CHUNK, cells - base)
            for v in range(1 << width):
                acc = 0
                rest = v
                while rest:
                    low = rest & -rest
                    b = low.bit_length() - 1
                    rest ^= low
                    acc |= 1 << (cells - 1 - imap[base + b])
                tabs[gi, c, v] = acc
    return tabs, nchunks, cells


@lru_cache(maxsize=8)
def _numpy_tables_cached(n: int, k: int, kind: str):
    return _numpy_tables(n, k, kind)


def canonical_keys_array(masks: np.ndarray, n: int, k: int, kind: str) -> np.ndarray:
    """Canonical (reversed-order) keys of an int64 array of set masks."""
    tabs, nchunks, cells = _numpy_tables_cached(n, k, kind)
    best = None
    chunk_vals = [(masks >> (_CHUNK * c)) & ((1 << _CHUNK) - 1) for c in range(nchunks)]
    for gi in range(tabs.shape[0]):
        acc = tabs[gi, 0][chunk_vals[0]]
        for c in range(1, nchunks):
            acc = acc | tabs[gi, c][chunk_vals[c]]
        best = acc if best is None else np.minimum(best, acc)
    return best


def reverse_bits_array(keys: np.ndarray, cells: int) -> np.ndarray:
    """Undo the bit order of canonical keys, vectorised."""
    rev9 = np.zeros(1 << _CHUNK, dtype=np.int64)
    for v in range(1 << _CHUNK):
        rev9[v] = int(format(v, "09b")[::-1], 2)
    nchunks = (cells + _CHUNK - 1) // _CHUNK
    pad = nchunks * _CHUNK
    out = np.zeros_like(keys)
    shifted = keys << (pad - cells)
    for c in range(nchunks):
        piece = (shifted >> (_CHUNK * c)) & ((1 << _CHUNK) - 1)
        out = out | (rev9[piece] << (pad - _CHUNK * (c + 1)))
    return out


# ---------------------------------------------------------------------------
# Orbit census


@dataclass
class OrbitCensus:
    total: int
    classes: int
    histogram: dict[int, int]  # orbit size -> number of classes

    def decomposition(self) -> list[tuple[int, int]]:
        """(orbit size, multiplicity) pairs, largest orbits first."""
        return sorted(self.histogram.items(), reverse=True)

    def check(self) -> bool:
        return (
            sum(size * mult for size, mult in self.histogram.items()) == self.total
            and sum(self.histogram.values()) == self.classes
        )


def classify_orbits(
    sets: Iterable[PointSet] | Iterable[int] | np.ndarray,
    n: int,
    k: int,
    kind: str,
    batch: int = 1 << 18,
) -> OrbitCensus:
    """Count equivalence classes among the given sets.

    ``sets`` must list each set exactly once; the orbit-size histogram is
    then read off from how many input sets share each canonical key.
    Accepts PointSets, raw bit masks, or a numpy int64 array.
    """
    cells = cube_cells(n, k)
    counts: dict[int, int] = {}
    total = 0
    if cells <= 62:
        if isinstance(sets, np.ndarray):
            arrays: Iterable[np.ndarray] = [sets]
        else:
            def chunked() -> Iterator[np.ndarray]:
                buf = []
                for s in sets:
                    buf.append(s.bits if isinstance(s, PointSet) else int(s))
                    if len(buf) >= batch:
                        yield np.array(buf, dtype=np.int64)
                        buf.clear()
                if buf:
                    yield np.array(buf, dtype=np.int64)

            arrays = chunked()
        for arr in arrays:
            total += arr.size
            keys = canonical_keys_array(arr, n, k, kind)
            uniq, cnt = np.unique(keys, return_counts=True)
            for key, c in zip(uniq.tolist(), cnt.tolist()):
                counts[key] = counts.get(key, 0) + c
    else:
        for s in sets:
            ps = s if isinstance(s, PointSet) else PointSet(n, k, int(s))
            counts[canonical_key(ps, kind)] = counts.get(canonical_key(ps, kind), 0) + 1
            total += 1
    histogram: dict[int, int] = {}
    for size in counts.values():
        histogram[size] = histogram.get(size, 0) + 1
    return OrbitCensus(total=total, classes=len(counts), histogram=histogram)


# ---------------------------------------------------------------------------
# Representatives of subsets of a stratum


def orbit_representatives(
    stratum: PointSet,
    kind: str = "geometric",
    predicate: Callable[[PointSet], bool] | None = None,
) -> list[PointSet]:
    """One representative per symmetry class of predicate-satisfying
    subsets of the stratum.

    The stratum must be invariant under the group (e.g. a sphere); the
    group action is restricted to the stratum's points, so full subset
    enumeration is feasible for strata of up to ~20 points.
    """
    pts = list(stratum.indices())
    m = len(pts)
    if m > 20:
        raise ValueError(f"stratum of {m} points is too large to enumerate")
    pos = {idx: j for j, idx in enumerate(pts)}
    maps = _group_index_maps(stratum.n, stratum.k, kind)
    sub_maps = []
    for imap in maps:
        sub = [0] * m
        ok = True
        for j, idx in enumerate(pts):
            img = imap[idx]
            if img not in pos:
                ok = False
                break
            sub[j] = pos[img]
        if not ok:
            raise ValueError("stratum is not invariant under the group")
        sub_maps.append(sub)

    tabs, nchunks, cells = _numpy_tables(stratum.n, stratum.k, kind, sub_maps, m)
    masks = np.arange(1 << m, dtype=np.int64)
    keys = None
    chunk_vals = [(masks >> (_CHUNK * c)) & ((1 << _CHUNK) - 1) for c in range(nchunks)]
    for gi in range(tabs.shape[0]):
        acc = tabs[gi, 0][chunk_vals[0]]
        for c in range(1, nchunks):
            acc = acc | tabs[gi, c][chunk_vals[c]]
        keys = acc if keys is None else np.minimum(keys, acc)
    reps_sub = np.unique(reverse_bits_array(keys, m))

    out = []
    for sub_mask in reps_sub.tolist():
        bits = 0
        rest = sub_mask
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest ^= low
            bits |= 1 << pts[j]
        ps = PointSet(stratum.n, stratum.k, bits)
        if predicate is None or predicate(ps):
            out.append(ps)
    return out
