"""Dimension-4 search machinery.

Everything here works on [3]^4 sliced along the last coordinate into
three [3]^3 slices (27 bits each), with the full cube's geometric lines
split into in-slice lines (delegated to the 3D tables) and cross lines
(one point per slice).  The three engines are:

* ``max_moser4`` — the exact maximum size, by pairing canonical outer
  slices against all compatible opposite slices and bounding the middle
  through an exclusion-mask memo;
* ``shard_frontier`` / ``merged_frontier`` — the corner-sphere-sharded
  Pareto search (one shard per symmetry class of corner intersection
  with at least three points; small strata run in milliseconds, the
  full run is a long, resumable job);
* ``count_by_statistics`` — exact counts of Moser sets with prescribed
  statistics, by a sphere-layer DFS whose innermost level is counted
  through a memoised independent-set recursion.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import Callable, Iterator

import numpy as np

from .cube import PointSet, index_of_digits, line_index_table, sphere_mask
from .symmetry import (
    canonical_form,
    canonical_keys_array,
    orbit_representatives,
    reverse_bits_array,
)
from .verify import InternalCheckError, is_moser, statistics

# ---------------------------------------------------------------------------
# Sphere bookkeeping for [3]^4


@lru_cache(maxsize=None)
def sphere_indices(i: int) -> tuple[int, ...]:
    mask = sphere_mask(4, i)
    return tuple(idx for idx in range(81) if mask >> idx & 1)


@lru_cache(maxsize=None)
def grouped_triples() -> dict[int, list[tuple[int, int, int]]]:
    """Geometric-line triples (endpoint, endpoint, midpoint) of [3]^4,
    grouped by the endpoints' sphere index."""
    sphere_of = {}
    for i in range(5):
        for idx in sphere_indices(i):
            sphere_of[idx] = i
    groups: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(1, 5)}
    for p1, p2, p3 in line_index_table(4, 3, "geometric"):
        i = sphere_of[p1]
        assert sphere_of[p3] == i and sphere_of[p2] < i
        groups[i].append((p1, p3, p2))
    return groups


@lru_cache(maxsize=None)
def _local_triples() -> dict[int, list[tuple[int, int, int]]]:
    """Triples re-indexed to per-sphere local positions: for endpoints in
    sphere i, entries (u_local, v_local, (midsphere, m_local))."""
    out = {}
    pos = {i: {idx: j for j, idx in enumerate(sphere_indices(i))} for i in range(5)}
    sphere_of = {}
    for i in range(5):
        for idx in sphere_indices(i):
            sphere_of[idx] = i
    for i, triples in grouped_triples().items():
        rows = []
        for u, v, m in triples:
            ms = sphere_of[m]
            rows.append((pos[i][u], pos[i][v], ms, pos[ms][m]))
        out[i] = rows
    return out


# ---------------------------------------------------------------------------
# Exact counts of Moser sets with prescribed statistics


def _enumerate_level(
    npoints: int, want: int, forbidden_pairs: list[tuple[int, int]]
) -> Iterator[int]:
    """All `want`-subsets (as local bit masks) avoiding the given pairs."""
    adj = [0] * npoints
    for u, v in forbidden_pairs:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    def rec(i: int, chosen: int, count: int) -> Iterator[int]:
        if count == want:
            yield chosen
            return
        if npoints - i < want - count:
            return
        if not adj[i] & chosen:
            yield from rec(i + 1, chosen | 1 << i, count + 1)
        yield from rec(i + 1, chosen, count)

    yield from rec(0, 0, 0)


def _count_independent(adj: list[int], full_mask: int, need: int) -> int:
    """Number of `need`-subsets of the masked vertex set that avoid all
    edges of `adj` (memoised branch recursion)."""
    memo: dict[tuple[int, int], int] = {}

    def rec(mask: int, need: int) -> int:
        if need == 0:
            return 1
        n_avail = mask.bit_count()
        if n_avail < need:
            return 0
        key = (mask, need)
        val = memo.get(key)
        if val is not None:
            return val
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        if adj[v] & mask == 0:
            # isolated vertex: in or out without interactions
            val = rec(rest, need) + rec(rest, need - 1)
        else:
            val = rec(rest, need) + rec(rest & ~adj[v], need - 1)
        memo[key] = val
        return val

    return rec(full_mask, need)


def _level_pairs(i: int, chosen_inner: dict[int, int]) -> list[tuple[int, int]]:
    """Forbidden pairs within sphere i given chosen inner levels (local)."""
    pairs = []
    for u, v, ms, mloc in _local_triples()[i]:
        if ms in chosen_inner and chosen_inner[ms] >> mloc & 1:
            pairs.append((u, v))
    return pairs


def count_by_statistics(target: tuple[int, int, int, int, int],
                        collect: list | None = None) -> int:
    """Exact number of Moser sets in [3]^4 with the given statistics
    (a_0..a_4, where a_0 counts points with no letter 2).

    With ``collect`` a list, the full 81-bit masks are appended to it.
    """
    if len(target) != 5:
        raise ValueError("need statistics (a0, a1, a2, a3, a4)")
    a0, a1, a2, a3, a4 = target
    caps = [comb(4, i) * 2 ** (4 - i) for i in range(5)]
    # target[i] counts points with i twos = sphere 4 - i
    wants = {4: a0, 3: a1, 2: a2, 1: a3, 0: a4}
    for i, w in wants.items():
        if not 0 <= w <= len(sphere_indices(i)):
            return 0

    total = 0
    triples3 = _local_triples()[3]
    s3_idx = sphere_indices(3)
    s4_idx = sphere_indices(4)
    for e_mask in _enumerate_level(1, wants[0], []):
        inner0 = {0: e_mask}
        for d_mask in _enumerate_level(8, wants[1], _level_pairs(1, inner0)):
            inner1 = {0: e_mask, 1: d_mask}
            for c_mask in _enumerate_level(24, wants[2], _level_pairs(2, inner1)):
                inner2 = dict(inner1)
                inner2[2] = c_mask
                # adjacency on sphere 3 induced by the chosen inner levels
                adj3 = [0] * 32
                for u, v, ms, mloc in triples3:
                    if inner2[ms] >> mloc & 1:
                        adj3[u] |= 1 << v
                        adj3[v] |= 1 << u
                # corner level: pairs with chosen inner midpoints forbidden;
                # distance-1 pairs exclude their sphere-3 midpoint instead
                corner_pairs = []
                corner_excl: dict[tuple[int, int], int] = {}
                for u, v, ms, mloc in _local_triples()[4]:
                    if ms == 3:
                        corner_excl[(u, v)] = mloc
                    elif inner2[ms] >> mloc & 1:
                        corner_pairs.append((u, v))
                excl_adj = [dict() for _ in range(16)]
                for (u, v), mloc in corner_excl.items():
                    excl_adj[u][v] = mloc
                    excl_adj[v][u] = mloc
                for a_mask in _enumerate_level(16, wants[4], corner_pairs):
                    x_mask = 0
                    rest = a_mask
                    chosen_list = []
                    r = rest
                    while r:
                        low = r & -r
                        chosen_list.append(low.bit_length() - 1)
                        r ^= low
                    for ui in range(len(chosen_list)):
                        u = chosen_list[ui]
                        for v in chosen_list[ui + 1 :]:
                            mloc = excl_adj[u].get(v)
                            if mloc is not None:
                                x_mask |= 1 << mloc
                    full = (1 << 32) - 1
                    cnt = _count_independent(adj3, full & ~x_mask, wants[3])
                    if collect is not None and cnt:
                        for b_mask in _enumerate_b_sets(adj3, full & ~x_mask, wants[3]):
                            bits = 0
                            if e_mask:
                                bits |= 1 << sphere_indices(0)[0]
                            for lvl, mask, idxs in (
                                (1, d_mask, sphere_indices(1)),
                                (2, c_mask, sphere_indices(2)),
                                (3, b_mask, s3_idx),
                                (4, a_mask, s4_idx),
                            ):
                                m = mask
                                while m:
                                    low = m & -m
                                    bits |= 1 << idxs[low.bit_length() - 1]
                                    m ^= low
                            collect.append(bits)
                    total += cnt
    return total


def _enumerate_b_sets(adj: list[int], mask: int, need: int) -> Iterator[int]:
    def rec(mask: int, chosen: int, need: int) -> Iterator[int]:
        if need == 0:
            yield chosen
            return
        if mask.bit_count() < need:
            return
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        yield from rec(rest & ~adj[v], chosen | low, need - 1)
        yield from rec(rest, chosen, need)

    yield from rec(mask, 0, need)


def good_set_classify() -> dict:
    """Enumerate all Moser sets with statistics (6,12,18,4,0), check they
    form a single geometric class, and index them by the positions and
    letters of their four one-letter points."""
    collected: list[int] = []
    count = count_by_statistics((6, 12, 18, 4, 0), collect=collected)
    sets = [PointSet(4, 3, b) for b in collected]
    assert count == len(sets)
    keys = {canonical_form(A, "geometric").bits for A in sets}
    by_type = {}
    for A in sets:
        ones = sorted(t for t in A.texts() if t.count("2") == 3)
        # each one-letter point is x222 / 2y22 / 22z2 / 222w; read off xyzw
        letters = [None] * 4
        for t in ones:
            pos = next(i for i, ch in enumerate(t) if ch != "2")
            letters[pos] = t[pos]
        by_type["".join(letters)] = A
    return {
        "count": count,
        "sets": sets,
        "classes": len(keys),
        "by_type": by_type,
    }


# ---------------------------------------------------------------------------
# Cross-line templates along the last axis


@lru_cache(maxsize=None)
def cross_templates4() -> list[tuple[int, int, int]]:
    """Lines of [3]^4 with a wildcard last coordinate, as (slice-1 point,
    slice-2 point, slice-3 point) inner [3]^3 indices."""
    out = []
    symbols = (1, 2, 3, "x", "X")
    for s in product(symbols, repeat=3):
        tri = []
        for i in (1, 2, 3):
            digits = [
                i if c == "x" else (4 - i if c == "X" else c) for c in s
            ]
            tri.append(index_of_digits(digits, 3))
        out.append(tuple(tri))
    return out


def _exclusions_vector(A1: int, A3_arr: np.ndarray) -> np.ndarray:
    """Middle-slice exclusion masks for one first slice against an array
    of third slices."""
    E = np.zeros_like(A3_arr)
    for p1, p2, p3 in cross_templates4():
        if A1 >> p1 & 1:
            E |= ((A3_arr >> p3) & 1) << p2
    return E


# ---------------------------------------------------------------------------
# Exact 4D Moser maximum


def max_moser4(seed_witness: bool = True, log: Callable[[str], None] | None = None):
    """The exact maximum Moser set size in [3]^4, with a witness.

    The incumbent starts at the verified 43-point shell construction
    (seed_witness=False starts from the 40-point semisphere , making the
    search itself discover a 43-point set).  The pair loop is complete
    for any value above the incumbent, so an empty scan proves optimality.
    """
    from . import search
    from .construct import best_semisphere, semisphere_lb, sphere_shell_lb

    t = search.cube3_tables("moser")
    masks, sizes = t.masks, t.sizes

    if seed_witness:
        witness = sphere_shell_lb(4, 3)
    else:
        witness = semisphere_lb(4, best_semisphere(4)[0])
    best = witness.size

    by_size = {s: masks[sizes == s] for s in range(int(sizes.max()), 8, -1)}

    hi = masks[sizes >= 13]
    keys = canonical_keys_array(hi, 3, 3, "geometric")
    reps = np.unique(reverse_bits_array(keys, 27))
    rep_sizes = np.bitwise_count(reps.astype(np.uint64)).astype(np.int64)

    maxmid_memo: dict[tuple[int, int], int] = {}

    def maxmid_at_least(E: int, need: int) -> int:
        """Largest middle size >= need compatible with exclusion E (or 0)."""
        key = (E, need)
        hit = maxmid_memo.get(key)
        if hit is not None:
            return hit
        out = 0
        for s in sorted(by_size, reverse=True):
            if s < need:
                break
            arr = by_size[s]
            if bool(((arr & E) == 0).any()):
                out = s
                break
        maxmid_memo[key] = out
        return out

    best_parts = None
    pairs = survivors = 0
    for s1 in sorted(set(rep_sizes.tolist()), reverse=True):
        if 2 * s1 + 16 <= best:
            break
        for A1 in reps[rep_sizes == s1].tolist():
            lo_size = best + 1 - 16 - s1
            cand = masks[(sizes <= s1) & (sizes >= lo_size)]
            cand_sizes = sizes[(sizes <= s1) & (sizes >= lo_size)]
            if cand.size == 0:
                continue
            E_arr = _exclusions_vector(int(A1), cand)
            free = 27 - np.bitwise_count(E_arr.astype(np.uint64)).astype(np.int64)
            need = best + 1 - s1 - cand_sizes
            ok = free >= need
            pairs += int(cand.size)
            survivors += int(ok.sum())
            for A3, E, nd in zip(
                cand[ok].tolist(), E_arr[ok].tolist(), need[ok].tolist()
            ):
                got = maxmid_at_least(E, int(nd))
                if got >= nd:
                    # materialise the middle witness
                    arr = by_size[got]
                    mid = int(arr[(arr & E) == 0][0])
                    total = s1 + int(A3).bit_count() + got
                    if total > best:
                        best = total
                        best_parts = (int(A1), mid, int(A3))
                        if log:
                            log(f"improved to {best}")
    if best_parts is not None:
        A1, mid, A3 = best_parts
        bits = A1 | (mid << 27) | (A3 << 54)
        witness = PointSet(4, 3, bits)
    if not is_moser(witness):
        raise InternalCheckError("4D maximum witness is not a Moser set")
    if witness.size != best:
        raise InternalCheckError("4D maximum witness size mismatch")
    if log:
        log(f"pairs={pairs} survivors={survivors} memo={len(maxmid_memo)}")
    return best, witness


# ---------------------------------------------------------------------------
# Sharded 4D Pareto search


@lru_cache(maxsize=1)
def corner_shards() -> list[int]:
    """Corner-intersection shard patterns (16-bit, >= 3 points), one per
    symmetry class, in deterministic order."""
    corner = PointSet(4, 3, sphere_mask(4, 4))
    reps = orbit_representatives(corner, "geometric", predicate=lambda s: s.size >= 3)
    pos = {idx: j for j, idx in enumerate(sphere_indices(4))}
    out = []
    for r in reps:
        patt = 0
        for idx in r.indices():
            patt |= 1 << pos[idx]
        out.append(patt)
    return sorted(out)


def _corner_pattern_split(pattern16: int) -> tuple[int, int]:
    """Split a 16-bit corner pattern into the slice-1 and slice-3
    corner patterns of [3]^3 (8 bits each, in the 3D table's bit order)."""
    corner3 = [i for i in range(27) if sphere_mask(3, 3) >> i & 1]
    pos3 = {idx: j for j, idx in enumerate(corner3)}
    c1 = c3 = 0
    for j, idx in enumerate(sphere_indices(4)):
        if pattern16 >> j & 1:
            inner, last = idx % 27, idx // 27
            if last == 0:  # last digit 1
                c1 |= 1 << pos3[inner]
            elif last == 2:  # last digit 3
                c3 |= 1 << pos3[inner]
            else:
                raise AssertionError("corner with a middle slice digit")
    return c1, c3


@dataclass
class ShardRun:
    shard: int
    pattern: int
    frontier: list[tuple[tuple[int, ...], int]]
    pairs: int
    memo_hits: int
    memo_misses: int
    seconds: float


class MiddleParetoMemo:
    """Exclusion mask -> Pareto list of (3D stats, minimal witness)."""

    def __init__(self, masks: np.ndarray, stats_packed: np.ndarray,
                 max_entries: int = 1 << 20):
        self.masks = masks
        self.stats_packed = stats_packed
        self.cache: dict[int, list[tuple[int, int]]] = {}
        self.hits = 0
        self.misses = 0
        self.max_entries = max_entries

    def get(self, E: int) -> list[tuple[int, int]]:
        row = self.cache.get(E)
        if row is not None:
            self.hits += 1
            return row
        self.misses += 1
        ok = (self.masks & E) == 0
        packed = self.stats_packed[ok]
        sub_masks = self.masks[ok]
        uniq, inverse = np.unique(packed, return_inverse=True)
        mins = np.full(uniq.shape, np.iinfo(np.int64).max, dtype=np.int64)
        np.minimum.at(mins, inverse, sub_masks)
        rows = {}
        stats = [tuple(int(p >> (8 * (3 - i))) & 0xFF for i in range(4))
                 for p in uniq.tolist()]
        pareto = []
        for i, s in enumerate(stats):
            if not any(t != s and all(x >= y for x, y in zip(t, s)) for t in stats):
                pareto.append((int(uniq[i]), int(mins[i])))
        if len(self.cache) < self.max_entries:
            self.cache[E] = pareto
        return pareto


def shard_frontier(
    shard: int,
    checkpoint_path=None,
    checkpoint_every: float = 30.0,
    resume_state: dict | None = None,
) -> ShardRun:
    """Pareto frontier of Moser sets whose corner intersection equals the
    shard's pattern (exact within the shard)."""
    from . import search

    patterns = corner_shards()
    if not 0 <= shard < len(patterns):
        raise ValueError(f"shard must be in [0, {len(patterns)})")
    pattern = patterns[shard]
    c1, c3 = _corner_pattern_split(pattern)
    t = search.cube3_tables("moser")
    masks, corner = t.masks, t.corner_pattern
    stats_packed = t.stats_packed

    A1s = masks[corner == c1]
    A1_stats = stats_packed[corner == c1]
    A3s = masks[corner == c3]
    A3_stats = stats_packed[corner == c3]
    memo = MiddleParetoMemo(masks, stats_packed)

    rows: dict[tuple[int, ...], int] = {}
    start_index = 0
    if resume_state:
        rows = {tuple(s): w for s, w in resume_state["rows"]}
        start_index = resume_state["a1_index"]
    t0 = time.time()
    last_ckpt = t0
    pairs = 0
    for i1 in range(start_index, int(A1s.size)):
        A1 = int(A1s[i1])
        s1 = _unpack3(int(A1_stats[i1]))
        E_arr = _exclusions_vector(A1, A3s)
        for j in range(int(A3s.size)):
            A3 = int(A3s[j])
            s3 = _unpack3(int(A3_stats[j]))
            pairs += 1
            for packed_mid, wmid in memo.get(int(E_arr[j])):
                smid = _unpack3(packed_mid)
                s4 = (
                    s1[0] + s3[0],
                    s1[1] + s3[1] + smid[0],
                    s1[2] + s3[2] + smid[1],
                    s1[3] + s3[3] + smid[2],
                    smid[3],
                )
                witness = A1 | (wmid << 27) | (A3 << 54)
                if s4 not in rows or witness < rows[s4]:
                    rows[s4] = witness
        if checkpoint_path is not None and time.time() - last_ckpt > checkpoint_every:
            _write_shard_checkpoint(checkpoint_path, shard, rows, i1 + 1,
                                    int(A1s.size), time.time() - t0, False)
            last_ckpt = time.time()
    frontier = _pareto_filter_rows(rows)
    run = ShardRun(
        shard=shard,
        pattern=pattern,
        frontier=frontier,
        pairs=pairs,
        memo_hits=memo.hits,
        memo_misses=memo.misses,
        seconds=time.time() - t0,
    )
    if checkpoint_path is not None:
        _write_shard_checkpoint(checkpoint_path, shard, rows, int(A1s.size),
                                int(A1s.size), run.seconds, True)
    return run


def _unpack3(packed: int) -> tuple[int, int, int, int]:
    return tuple((packed >> (8 * (3 - i))) & 0xFF for i in range(4))


def _pareto_filter_rows(rows: dict[tuple[int, ...], int]) -> list:
    keys = sorted(rows)
    out = []
    for s in keys:
        if not any(t != s and all(x >= y for x, y in zip(t, s)) for t in keys):
            out.append((s, rows[s]))
    return out


def _write_shard_checkpoint(path, shard, rows, a1_index, a1_total, seconds, done):
    from .search import SearchCheckpoint

    ck = SearchCheckpoint(
        shard=shard,
        frontier=sorted((tuple(s), w) for s, w in rows.items()),
        pairs_done=a1_index,
        total_pairs=a1_total,
        wall_seconds=seconds,
        completed=done,
    )
    path.write_text(ck.to_json())


def check_stat_clauses(vectors) -> list[str]:
    """The published structural clauses for large 4D Moser statistics;
    returns violations (empty when all hold)."""
    problems = []
    for v in vectors:
        a, b, c, d, e = v
        size = sum(v)
        checks = [
            (size >= 40, e == 0, "e=0 when size>=40"),
            (size >= 43, d == 0, "d=0 when size>=43"),
            (size >= 42, d <= 2, "d<=2 when size>=42"),
            (size >= 41, d <= 3, "d<=3 when size>=41"),
            (size >= 40, d <= 6, "d<=6 when size>=40"),
            (size >= 43, c >= 18, "c>=18 when size>=43"),
            (size >= 42, c >= 12, "c>=12 when size>=42"),
            (size >= 43, b >= 15, "b>=15 when size>=43"),
        ]
        for cond, ok, label in checks:
            if cond and not ok:
                problems.append(f"{v}: {label}")
    return problems
