"""Exhaustive and heuristic searches over subsets of [3]^n.

The n <= 3 engines are exact and complete: dimension <= 2 by direct
enumeration, dimension 3 by composing predicate-satisfying 2D slices
along the last axis with cross-line exclusion of middle points.  The
dimension-4 machinery (sharded frontier, exact counts by statistics)
lives in :mod:`hjm.fourd`.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from types import SimpleNamespace
from typing import Callable, Iterable, Iterator

import numpy as np

from . import fourd
from .cube import (
    PointSet,
    cube_cells,
    line_index_table,
    sphere_mask,
)
from .optimize import branch_and_bound
from .verify import StatVector, statistics

PREDICATES = ("line-free", "moser", "cap-set")

_LINE_KIND = {"line-free": "combinatorial", "moser": "geometric"}


def constraint_triples(n: int, k: int, predicate: str) -> tuple[tuple[int, ...], ...]:
    """Forbidden fully-contained point tuples for a predicate."""
    if predicate in _LINE_KIND:
        return line_index_table(n, k, _LINE_KIND[predicate])
    if predicate == "cap-set":
        if k != 3:
            raise ValueError("cap sets live over the three-element field")
        return _affine_lines(n)
    raise ValueError(f"unknown predicate {predicate!r}")


@lru_cache(maxsize=None)
def _affine_lines(n: int) -> tuple[tuple[int, int, int], ...]:
    cells = cube_cells(n, 3)
    powers = [3**i for i in range(n)]
    lines = set()
    for x in range(cells):
        xd = [(x // p) % 3 for p in powers]
        for r in range(1, cells):
            rd = [(r // p) % 3 for p in powers]
            y = sum(((a + b) % 3) * p for a, b, p in zip(xd, rd, powers))
            z = sum(((a + 2 * b) % 3) * p for a, b, p in zip(xd, rd, powers))
            lines.add(tuple(sorted((x, y, z))))
    return tuple(sorted(lines))


def satisfies(mask: int, triples) -> bool:
    for pts in triples:
        for p in pts:
            if not mask >> p & 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def masks_upto2(n: int, predicate: str) -> tuple[int, ...]:
    """All predicate-satisfying subsets of [3]^n for n <= 2, ascending."""
    if n > 2:
        raise ValueError("direct enumeration is for n <= 2")
    if n == 0:
        return (0, 1)
    triples = constraint_triples(n, 3, predicate)
    return tuple(m for m in range(1 << 3**n) if satisfies(m, triples))


def _cross_templates(predicate: str) -> list[tuple[int, int, int]]:
    """Lines of [3]^3 with a wildcard in the last coordinate, as triples of
    2D inner indices (one per slice value)."""
    if predicate == "cap-set":
        out = set()
        for x, y, z in _affine_lines(3):
            tri = sorted(((w // 9, w % 9) for w in (x, y, z)))
            if [v for v, _ in tri] == [0, 1, 2]:
                out.add(tuple(inner for _, inner in tri))
        return sorted(out)
    symbols: tuple = (1, 2, 3, "x") if predicate == "line-free" else (1, 2, 3, "x", "X")
    out = []
    for s0, s1 in product(symbols, repeat=2):
        tri = []
        for i in (1, 2, 3):
            d0 = i if s0 == "x" else (4 - i if s0 == "X" else s0)
            d1 = i if s1 == "x" else (4 - i if s1 == "X" else s1)
            tri.append((d0 - 1) + 3 * (d1 - 1))
        out.append(tuple(tri))
    return out


@dataclass
class Cube3Tables:
    """Cached enumeration machinery for one predicate on [3]^3."""

    predicate: str
    masks2: tuple[int, ...]
    cross: list[tuple[int, int, int]]
    masks: np.ndarray  # all predicate subsets of [3]^3, packed 27-bit
    sizes: np.ndarray
    stats_packed: np.ndarray
    corner_pattern: np.ndarray  # 8-bit intersection with the corner sphere

    def count(self) -> int:
        return int(self.masks.size)


def _pack_stats3(masks: np.ndarray) -> np.ndarray:
    packed = np.zeros_like(masks)
    for i in range(4):
        m = sphere_mask(3, 3 - i)
        c = np.bitwise_count((masks & m).astype(np.uint64)).astype(np.int64)
        packed |= c << (8 * (3 - i))
    return packed


@lru_cache(maxsize=4)
def cube3_tables(predicate: str) -> Cube3Tables:
    masks2 = masks_upto2(2, predicate)
    cross = _cross_templates(predicate)
    Lnp = np.array(masks2, dtype=np.int64)
    valid: dict[int, np.ndarray] = {}
    chunks = []
    for A1 in masks2:
        t1 = [(p1, p2, p3) for (p1, p2, p3) in cross if A1 >> p1 & 1]
        for A3 in masks2:
            P = 0
            for p1, p2, p3 in t1:
                if A3 >> p3 & 1:
                    P |= 1 << p2
            arr = valid.get(P)
            if arr is None:
                arr = Lnp[(Lnp & P) == 0] << 9
                valid[P] = arr
            chunks.append(A1 | (A3 << 18) | arr)
    masks = np.concatenate(chunks)
    masks.sort()
    sizes = np.bitwise_count(masks.astype(np.uint64)).astype(np.int64)
    corner = np.zeros_like(masks)
    corner_pts = [i for i in range(27) if sphere_mask(3, 3) >> i & 1]
    for b, idx in enumerate(corner_pts):
        corner |= ((masks >> idx) & 1) << b
    return Cube3Tables(
        predicate=predicate,
        masks2=masks2,
        cross=cross,
        masks=masks,
        sizes=sizes,
        stats_packed=_pack_stats3(masks),
        corner_pattern=corner,
    )


# ---------------------------------------------------------------------------
# Counting and maxima


def enumerate_all(n: int, k: int, predicate: str) -> int:
    """Exact count of predicate-satisfying subsets of [k]^n."""
    if k != 3:
        raise ValueError("exhaustive enumeration is implemented for k = 3")
    if n <= 2:
        return len(masks_upto2(n, predicate))
    if n == 3:
        return cube3_tables(predicate).count()
    raise ValueError("full enumeration beyond n = 3 is out of budget")


def iter_all_masks(n: int, predicate: str) -> Iterator[int]:
    if n <= 2:
        yield from masks_upto2(n, predicate)
    elif n == 3:
        yield from cube3_tables(predicate).masks.tolist()
    else:
        raise ValueError("full enumeration beyond n = 3 is out of budget")


def _subset_problem(npoints: int, triples) -> SimpleNamespace:
    """Adapter handing an arbitrary unit-weight subset problem to the
    simplex branch-and-bound engine."""
    cons = sorted({tuple(sorted(set(t))) for t in triples})
    point_cons: list[list[int]] = [[] for _ in range(npoints)]
    for ci, con in enumerate(cons):
        for p in con:
            point_cons[p].append(ci)
    return SimpleNamespace(
        points=list(range(npoints)),
        weights=[1] * npoints,
        constraints=cons,
        point_constraints=point_cons,
        diagonal_of=None,
        fixed_in=frozenset(),
        fixed_out=frozenset(),
        n=None,
        k=None,
    )


def max_set(n: int, k: int, predicate: str, node_budget: int | None = None):
    """Exact maximum size with witnesses.

    For n <= 3 every maximiser is returned; the 4D Moser maximum comes
    from the sharded slice engine; cap sets go through branch and bound.
    """
    if k != 3:
        raise ValueError("search maxima are implemented for k = 3")
    if n <= 3 and predicate in ("line-free", "moser"):
        if n <= 2:
            masks = masks_upto2(n, predicate)
            best = max(m.bit_count() for m in masks)
            witnesses = [PointSet(n, 3, m) for m in masks if m.bit_count() == best]
            return best, witnesses
        t = cube3_tables(predicate)
        best = int(t.sizes.max())
        witness_masks = t.masks[t.sizes == best]
        return best, [PointSet(3, 3, int(m)) for m in witness_masks.tolist()]
    if predicate == "moser" and n == 4:
        value, witness = fourd.max_moser4()
        return value, [witness]
    if predicate == "cap-set" and n <= 4:
        triples = constraint_triples(n, 3, predicate)
        res = branch_and_bound(
            _subset_problem(3**n, triples), node_budget=node_budget
        )
        witness = PointSet.from_indices(
            (i for i in res.cells), n, 3
        )
        if not res.exact:
            raise RuntimeError("cap-set search exceeded its node budget")
        return res.value, [witness]
    raise ValueError(f"max_set({n}, {k}, {predicate}) is out of the exhaustive budget")


# ---------------------------------------------------------------------------
# Pareto frontiers


def _unpack_stats(packed: int, n: int) -> tuple[int, ...]:
    return tuple((packed >> (8 * (n - i))) & 0xFF for i in range(n + 1))


def _pareto_filter(rows: dict[tuple[int, ...], int]) -> list[tuple[tuple[int, ...], int]]:
    """Keep non-dominated statistics; rows map stats -> min witness."""
    keys = sorted(rows)
    out = []
    for s in keys:
        dominated = False
        for t in keys:
            if t != s and all(x >= y for x, y in zip(t, s)):
                dominated = True
                break
        if not dominated:
            out.append((s, rows[s]))
    return out


@dataclass
class ParetoFrontier:
    n: int
    entries: list[tuple[tuple[int, ...], int | None]]  # (statistics, witness bits)

    def vectors(self) -> list[tuple[int, ...]]:
        return [s for s, _ in self.entries]

    def witnesses(self) -> list[PointSet | None]:
        return [
            None if w is None else PointSet(self.n, 3, w) for _, w in self.entries
        ]

    def check_nondominated(self) -> bool:
        vs = self.vectors()
        return not any(
            s != t and all(x >= y for x, y in zip(t, s)) for s in vs for t in vs
        )

    def extremal_vectors(self) -> list[tuple[int, ...]]:
        from .lp import extremal_points

        vs = self.vectors()
        return [vs[i] for i in extremal_points(vs)]

    def to_csv(self) -> str:
        header = ",".join(f"a{i}" for i in range(self.n + 1)) + ",witness"
        lines = [header]
        for s, w in sorted(self.entries):
            wtxt = "" if w is None else " ".join(PointSet(self.n, 3, w).texts())
            lines.append(",".join(str(x) for x in s) + "," + wtxt)
        return "\n".join(lines) + "\n"


def pareto(n: int, k: int, predicate: str) -> ParetoFrontier:
    """The exact Pareto frontier of statistics vectors, with witnesses."""
    if k != 3:
        raise ValueError("statistics are defined for k = 3")
    rows: dict[tuple[int, ...], int] = {}
    if n <= 2:
        for m in masks_upto2(n, predicate):
            s = statistics(PointSet(n, 3, m)).entries
            if s not in rows or m < rows[s]:
                rows[s] = m
    elif n == 3:
        t = cube3_tables(predicate)
        order = np.argsort(t.masks, kind="stable")
        packed = t.stats_packed
        uniq, first = np.unique(packed, return_index=False, return_inverse=True)
        mins = np.full(uniq.shape, np.iinfo(np.int64).max, dtype=np.int64)
        np.minimum.at(mins, first, t.masks)
        for p, w in zip(uniq.tolist(), mins.tolist()):
            rows[_unpack_stats(p, 3)] = w
    elif n == 4 and predicate == "moser":
        raise ValueError("use the sharded slice engine for the 4D frontier")
    else:
        raise ValueError("frontiers are implemented for n <= 4")
    return ParetoFrontier(n, _pareto_filter(rows))


def slice_search(n: int, predicate: str = "moser", shard: int | None = None):
    """Slice-composed frontier engines.

    n = 3 re-derives the frontier by pairing outer slices (descending
    cardinality, first index <= third) against Pareto tables of middle
    slices keyed by the cross-line exclusion mask; it must agree with
    ``pareto`` bit for bit.  n = 4 delegates to the sharded engine.
    """
    if n == 3:
        return _slice_search3(predicate)
    if n == 4:
        if shard is None:
            raise ValueError("the 4D engine runs shard by shard; pass shard=")
        return fourd.shard_frontier(shard)
    raise ValueError("slice search is implemented for n in {3, 4}")


def middle_pareto_tables(predicate: str) -> dict[int, list[tuple[tuple[int, ...], int]]]:
    """For each 9-bit exclusion mask: the Pareto statistics of middle
    slices avoiding it (with minimal witnesses)."""
    masks2 = masks_upto2(2, predicate)
    tables: dict[int, list[tuple[tuple[int, ...], int]]] = {}
    for P in range(512):
        rows: dict[tuple[int, ...], int] = {}
        for m in masks2:
            if m & P:
                continue
            s = statistics(PointSet(2, 3, m)).entries
            if s not in rows or m < rows[s]:
                rows[s] = m
        tables[P] = _pareto_filter(rows)
    return tables


def _slice_search3(predicate: str) -> ParetoFrontier:
    # Swapping the outer slices is a geometric symmetry, so the Moser
    # search may take unordered pairs and mirror the witness; reflecting
    # one coordinate does not preserve combinatorial lines, so the
    # line-free search must walk ordered pairs.
    symmetric = predicate == "moser"
    masks2 = sorted(masks_upto2(2, predicate), key=lambda m: (-m.bit_count(), m))
    tables = middle_pareto_tables(predicate)
    cross = _cross_templates(predicate)
    stats2 = {m: statistics(PointSet(2, 3, m)).entries for m in masks2}
    rows: dict[tuple[int, ...], int] = {}
    for i, A1 in enumerate(masks2):
        t1 = [(p1, p2, p3) for (p1, p2, p3) in cross if A1 >> p1 & 1]
        for A3 in masks2[i:] if symmetric else masks2:
            P = 0
            for p1, p2, p3 in t1:
                if A3 >> p3 & 1:
                    P |= 1 << p2
            s1 = stats2[A1]
            s3 = stats2[A3]
            for smid, wmid in tables[P]:
                s = (
                    s1[0] + s3[0],
                    s1[1] + s3[1] + smid[0],
                    s1[2] + s3[2] + smid[1],
                    smid[2],
                )
                w = A1 | (wmid << 9) | (A3 << 18)
                if symmetric:
                    w = min(w, A3 | (wmid << 9) | (A1 << 18))
                if s not in rows or w < rows[s]:
                    rows[s] = w
    return ParetoFrontier(3, _pareto_filter(rows))


# ---------------------------------------------------------------------------
# 4D entry points (implemented in hjm.fourd)


def count_by_statistics(n: int, stats: tuple[int, ...]) -> int:
    if n != 4:
        raise ValueError("statistics counting is implemented for n = 4")
    return fourd.count_by_statistics(tuple(stats))


def good_set_classify() -> dict:
    return fourd.good_set_classify()


# ---------------------------------------------------------------------------
# Seeded heuristic search


def heuristic_max(
    n: int,
    k: int,
    predicate: str,
    budget_steps: int = 100_000,
    seed: int = 0,
    warm_start: bool = True,
) -> PointSet:
    """Best-found predicate set by seeded local search (never optimal-claiming).

    Deterministic for a given seed: the budget is a step quota, not wall
    clock.  With warm_start the search begins from the best bundled
    construction instead of the empty set.
    """
    triples = constraint_triples(n, k, predicate)
    cells = cube_cells(n, k)
    point_triples: list[list[tuple[int, ...]]] = [[] for _ in range(cells)]
    for tri in triples:
        for p in tri:
            point_triples[p].append(tri)
    rng = random.Random(seed)

    bits = 0
    if warm_start:
        bits = _warm_start(n, k, predicate)
    current = bits
    best = current
    best_size = current.bit_count()
    for _ in range(budget_steps):
        p = rng.randrange(cells)
        if current >> p & 1:
            continue
        blockers = [
            tri
            for tri in point_triples[p]
            if all(current >> q & 1 for q in tri if q != p)
        ]
        if not blockers:
            current |= 1 << p
        elif rng.random() < 0.25:
            for tri in blockers:
                victims = [q for q in tri if q != p and current >> q & 1]
                if victims:
                    current &= ~(1 << rng.choice(victims))
            current |= 1 << p
        size = current.bit_count()
        if size > best_size:
            best, best_size = current, size
    A = PointSet(n, k, best)
    if not satisfies(best, triples):
        raise AssertionError("heuristic produced an invalid set")
    return A


def _warm_start(n: int, k: int, predicate: str) -> int:
    from . import construct

    try:
        if predicate == "line-free" and k == 3:
            return construct.gamma_union(construct.dhj_cells(n), n, 3).bits
        if predicate == "moser" and k == 3:
            candidates = []
            i, _ = construct.best_semisphere(n)
            candidates.append(construct.semisphere_lb(n, i))
            if 4 <= n <= 8:
                r = construct.coding_bound(n, want_witness=True)
                if r.get("witness") is not None:
                    candidates.append(r["witness"])
            return max(candidates, key=lambda A: A.size).bits
    except Exception:
        pass
    return 0


# ---------------------------------------------------------------------------
# Checkpoints


@dataclass
class SearchCheckpoint:
    shard: int
    frontier: list[tuple[tuple[int, ...], int | None]]
    pairs_done: int
    total_pairs: int
    wall_seconds: float
    completed: bool
    memo_hits: int = 0
    memo_misses: int = 0

    def to_json(self) -> str:
        return json.dumps(
            {
                "shard": self.shard,
                "frontier": [[list(s), w] for s, w in sorted(self.frontier)],
                "pairs_done": self.pairs_done,
                "total_pairs": self.total_pairs,
                "wall_seconds": self.wall_seconds,
                "completed": self.completed,
                "memo_hits": self.memo_hits,
                "memo_misses": self.memo_misses,
            },
            sort_keys=True,
            indent=2,
        ) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SearchCheckpoint":
        raw = json.loads(text)
        return cls(
            shard=raw["shard"],
            frontier=[(tuple(s), w) for s, w in raw["frontier"]],
            pairs_done=raw["pairs_done"],
            total_pairs=raw["total_pairs"],
            wall_seconds=raw["wall_seconds"],
            completed=raw["completed"],
            memo_hits=raw.get("memo_hits", 0),
            memo_misses=raw.get("memo_misses", 0),
        )


def merge_frontiers(frontiers: Iterable[ParetoFrontier], n: int) -> ParetoFrontier:
    rows: dict[tuple[int, ...], int | None] = {}
    for f in frontiers:
        for s, w in f.entries:
            if s not in rows or (w is not None and (rows[s] is None or w < rows[s])):
                rows[s] = w
    filtered = _pareto_filter({s: (w if w is not None else 0) for s, w in rows.items()})
    return ParetoFrontier(n, [(s, rows[s]) for s, _ in filtered])
