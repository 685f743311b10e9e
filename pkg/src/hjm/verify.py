"""Predicates, statistics, linear-inequality machinery and certificates.

Everything here is exact: densities and inequality checks use rational
arithmetic, and every certificate re-check recomputes the claimed fields
from the raw point list.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import cube
from .cube import (
    PointSet,
    Word,
    cell_of_index,
    cell_size,
    cube_cells,
    hamming_index,
    line_index_table,
    simplex_points,
    sphere_mask,
)

FORMAT_VERSION = "1"


class InternalCheckError(AssertionError):
    """A mathematical identity failed; indicates a bug, not bad input."""


# ---------------------------------------------------------------------------
# Set predicates


def _contains_line(A: PointSet, kind: str) -> tuple[int, ...] | None:
    if A.n == 0:
        return None
    bits = A.bits
    for pts in line_index_table(A.n, A.k, kind):
        for p in pts:
            if not bits >> p & 1:
                break
        else:
            return pts
    return None


def is_line_free(A: PointSet) -> bool:
    """True iff A contains no combinatorial line."""
    return _contains_line(A, "combinatorial") is None


def is_moser(A: PointSet) -> bool:
    """True iff A contains no geometric line."""
    return _contains_line(A, "geometric") is None


def is_cap_set(A: PointSet) -> bool:
    """True iff A, read over F_3^n, contains no affine line x, x+r, x+2r."""
    if A.k != 3:
        raise ValueError("cap sets live in F_3^n")
    idxs = list(A.indices())
    members = set(idxs)
    n, k = A.n, A.k
    # three distinct points are collinear iff they sum to zero coordinatewise
    digit_cache = [cube.digits_of_index(i, n, k) for i in idxs]
    for a in range(len(idxs)):
        da = digit_cache[a]
        for b in range(a + 1, len(idxs)):
            db = digit_cache[b]
            third = 0
            p = 1
            for x, y in zip(da, db):
                third += ((-(x - 1) - (y - 1)) % 3) * p
                p *= 3
            if third in members and third != idxs[a] and third != idxs[b]:
                return False
    return True


# Simplex-level predicates ---------------------------------------------------


def simplex_triples(B: Iterable[tuple[int, ...]], n: int) -> Iterable[tuple]:
    """Upward simplices (a_1+r,...),(a_1,a_2+r,...),...,(...,a_k+r) inside B."""
    pts = set(B)
    if not pts:
        return
    k = len(next(iter(pts)))
    for p in pts:
        # p as the vertex incremented in the first coordinate
        for r in range(1, p[0] + 1):
            base = (p[0] - r,) + p[1:]
            others = [
                base[:j] + (base[j] + r,) + base[j + 1 :] for j in range(1, k)
            ]
            if all(o in pts for o in others):
                yield (p, *others)


def is_fujimura(B: Iterable[tuple[int, ...]], n: int) -> bool:
    """True iff B (a set of simplex points) contains no simplex."""
    return next(iter(simplex_triples(B, n)), None) is None


def isosceles_triples(B: Iterable[tuple[int, int, int]]) -> Iterable[tuple]:
    """Triples (a+r,b,c+s), (a+s,b,c+r), (a,b+r+s,c) inside B (k=3 only).

    Degenerate triples with r = s appear as the pair (a+r,b,c+r),
    (a,b+2r,c) repeated in the first two slots.
    """
    pts = set(B)
    for head in pts:  # head = (a, b+r+s, c)
        a, bm, c = head
        for total in range(1, bm + 1):  # total = r + s
            b = bm - total
            for r in range(total + 1):
                s = total - r
                f1 = (a + r, b, c + s)
                f2 = (a + s, b, c + r)
                if f1 in pts and f2 in pts:
                    yield (f1, f2, head)


def is_isosceles_free(B: Iterable[tuple[int, int, int]]) -> bool:
    return next(iter(isosceles_triples(B)), None) is None


# ---------------------------------------------------------------------------
# Statistics


@dataclass(frozen=True)
class StatVector:
    """Sphere-intersection counts: entry i counts points with exactly i
    letters equal to 2 (so entry 0 is the corner count |A ∩ S_{n,n}|)."""

    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.n + 1:
            raise ValueError("statistics need n+1 entries")
        for i, a in enumerate(self.entries):
            if not 0 <= a <= self.slot_capacity(self.n, i):
                raise ValueError(f"entry {i}={a} out of range")

    @staticmethod
    def slot_capacity(n: int, i: int) -> int:
        return comb(n, i) * 2 ** (n - i)

    @property
    def size(self) -> int:
        return sum(self.entries)

    def densities(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(a, self.slot_capacity(self.n, i))
            for i, a in enumerate(self.entries)
        )

    def dominates(self, other: "StatVector") -> bool:
        """Componentwise >= with at least one strict inequality."""
        ge = all(a >= b for a, b in zip(self.entries, other.entries))
        return ge and self.entries != other.entries


def statistics(A: PointSet) -> StatVector:
    if A.k != 3:
        raise ValueError("statistics are defined for k = 3")
    n = A.n
    entries = tuple(
        (A.bits & sphere_mask(n, n - i)).bit_count() for i in range(n + 1)
    )
    return StatVector(n, entries)


def check_double_counting(A: PointSet) -> dict:
    """Verify the slice-averaging identity for every statistics level.

    For 0 <= i <= n-1 the total of a_{i+1} over the 2n side slices equals
    (n-i-1)·a_{i+1}(A) and the total of a_i over the n centre slices
    equals (i+1)·a_{i+1}(A).  A violation is an internal bug.
    """
    n = A.n
    if A.k != 3 or n < 1:
        raise ValueError("double counting needs k=3, n >= 1")
    side_stats = []
    centre_stats = []
    for axis in range(n):
        for v in (1, 3):
            side_stats.append(statistics(cube.slice_extract(A, axis, v)))
        centre_stats.append(statistics(cube.slice_extract(A, axis, 2)))
    report = {"n": n, "levels": []}
    a = statistics(A).entries
    for i in range(n):
        side_total = sum(s.entries[i + 1] for s in side_stats) if i + 1 <= n - 1 else 0
        centre_total = sum(s.entries[i] for s in centre_stats)
        level = {"i": i, "a": a[i + 1]}
        if n - i - 1 > 0:
            if side_total != (n - i - 1) * a[i + 1]:
                raise InternalCheckError(
                    f"side-slice double counting failed at level {i}: "
                    f"{side_total} != {(n - i - 1) * a[i + 1]}"
                )
            level["side_average"] = Fraction(side_total, n - i - 1)
        if centre_total != (i + 1) * a[i + 1]:
            raise InternalCheckError(
                f"centre-slice double counting failed at level {i}: "
                f"{centre_total} != {(i + 1) * a[i + 1]}"
            )
        level["centre_average"] = Fraction(centre_total, i + 1)
        report["levels"].append(level)
    return report


# ---------------------------------------------------------------------------
# Linear inequalities over densities


@dataclass(frozen=True)
class LinearInequality:
    """sum_i coeffs[i] * alpha_{q*i+r}(A) <= bound, for Moser sets A."""

    coeffs: tuple[Fraction, ...]
    bound: Fraction
    q: int = 1
    r: int = 0

    def __post_init__(self):
        if self.q < 1 or self.r < 0:
            raise ValueError("need q >= 1 and r >= 0")
        if any(c < 0 for c in self.coeffs):
            raise ValueError("coefficients must be nonnegative")

    @property
    def m(self) -> int:
        return len(self.coeffs) - 1

    def min_dimension(self) -> int:
        return self.m * self.q + self.r

    def slots(self) -> list[int]:
        return [self.q * i + self.r for i in range(len(self.coeffs))]

    def check(self, stats: StatVector) -> bool:
        if stats.n < self.min_dimension():
            raise ValueError("statistics vector too short for this inequality")
        alphas = stats.densities()
        total = sum(c * alphas[s] for c, s in zip(self.coeffs, self.slots()))
        return total <= self.bound

    def integer_row(self, n: int) -> tuple[np.ndarray, int]:
        """Scaled integer form over statistics entries a_0..a_n.

        Returns (row, bound) with sum(row * a) <= bound equivalent to the
        rational inequality; lets big batches be checked with int64 math.
        """
        from math import gcd

        denoms = [StatVector.slot_capacity(n, s) for s in self.slots()]
        scale = 1
        for c, d in zip(self.coeffs, denoms):
            scale_den = (c / d).denominator
            scale = scale * scale_den // gcd(scale, scale_den)
        bound = self.bound * scale
        if bound.denominator != 1:
            scale *= bound.denominator
            bound = self.bound * scale
        row = np.zeros(n + 1, dtype=np.int64)
        for c, s, d in zip(self.coeffs, self.slots(), denoms):
            val = c * scale / d
            assert val.denominator == 1
            row[s] += int(val)
        return row, int(bound)

    def describe(self) -> str:
        terms = [
            f"{c}*a{s}" for c, s in zip(self.coeffs, self.slots()) if c
        ]
        return " + ".join(terms) + f" <= {self.bound}   (densities)"


def propagate(base: LinearInequality, q: int, r: int, N: int) -> LinearInequality:
    """Lift a base inequality to density slots q*i + r in dimension N."""
    if base.q != 1 or base.r != 0:
        raise ValueError("base inequality must be in plain form (q=1, r=0)")
    if q < 1 or r < 0 or N < base.m * q + r:
        raise ValueError("need q >= 1, r >= 0 and N >= m*q + r")
    return LinearInequality(base.coeffs, base.bound, q, r)


#: Base inequalities valid for Moser sets, as (coeffs over alpha_0..alpha_m, bound).
_BASE_1D = (( (2, 1), 2),)
_BASE_2D = (( (4, 2, 1), 4),)
_BASE_3D = (
    ((8, 6, 6, 2), 11),
    ((4, 4, 3, 1), 6),
    ((7, 3, 3, 1), 7),
    ((8, 3, 3, 1), 8),
    ((0, 4, 2, 1), 4),
    ((4, 0, 6, 2), 7),
    ((5, 0, 3, 1), 5),
)


def known_inequality_bank(n: int) -> list[LinearInequality]:
    """Every valid (q, r) instance of the 1D, 2D and 3D base inequalities."""
    if n < 1:
        raise ValueError("need n >= 1")
    bank = []
    for bases in (_BASE_1D, _BASE_2D, _BASE_3D):
        for coeffs, bound in bases:
            m = len(coeffs) - 1
            base = LinearInequality(
                tuple(Fraction(c) for c in coeffs), Fraction(bound)
            )
            for q in range(1, n + 1):
                if m * q > n:
                    break
                for r in range(0, n - m * q + 1):
                    bank.append(propagate(base, q, r, n))
    return bank


def check_inequality_bank(stats: StatVector) -> list[LinearInequality]:
    """Return the bank inequalities violated by the given statistics."""
    return [
        ineq
        for ineq in known_inequality_bank(stats.n)
        if not ineq.check(stats)
    ]


# ---------------------------------------------------------------------------
# Corner-pair deficiency


def pair_deficiency(B: PointSet) -> int:
    """Number of pairs in B ⊆ S_{n,n} at Hamming distance exactly 2."""
    n = B.n
    corner_mask = sphere_mask(n, n)
    if B.bits & ~corner_mask:
        raise ValueError("set contains points outside the corner sphere")
    idxs = list(B.indices())
    count = 0
    for i in range(len(idxs)):
        for j in range(i + 1, len(idxs)):
            if hamming_index(idxs[i], idxs[j], n, 3) == 2:
                count += 1
    return count


# ---------------------------------------------------------------------------
# LYM sums and the weighted-cell comparison


def lym_sum(A: PointSet) -> Fraction:
    """Sum over cells of |A ∩ cell| / |cell| (exact)."""
    counts: dict[tuple[int, ...], int] = {}
    for idx in A.indices():
        c = cell_of_index(idx, A.n, A.k)
        counts[c] = counts.get(c, 0) + 1
    return sum(
        (Fraction(v, cell_size(c)) for c, v in counts.items()), Fraction(0)
    )


@dataclass
class HocReport:
    lym: Fraction
    fujimura_max: int
    violated: bool
    n: int
    k: int

    def labels(self) -> dict:
        """The Fujimura maximum under both (n,k) index orders."""
        return {f"c_mu[n={self.n},k={self.k}]": self.fujimura_max,
                f"c_mu[{self.k},{self.n}] (swapped order)": self.fujimura_max}


def hoc_check(A: PointSet, n: int, k: int) -> HocReport:
    """Compare the LYM-style sum of a line-free set against the exact
    unweighted Fujimura maximum on the same simplex grid."""
    if (A.n, A.k) != (n, k):
        raise ValueError("dimension mismatch")
    if not is_line_free(A):
        raise ValueError("the comparison set must be line-free")
    from .optimize import fujimura_max_general

    s = lym_sum(A)
    cmax = fujimura_max_general(n, k)
    return HocReport(lym=s, fujimura_max=cmax, violated=s > cmax, n=n, k=k)


# ---------------------------------------------------------------------------
# Defect functionals for 4D statistics


@dataclass(frozen=True)
class DefectScores:
    """The four linear functionals of 4D statistics used in the 6D bound."""

    deficit: Fraction        # 356 - (4a + 6b + 10c + 20d + 60e)
    edge_score: Fraction     # 12a + 15b/2 + 20c/3 + 15d/2 + 12e
    centre_score: Fraction   # 15a + 5b + 5c/2 + 3d/2 + e
    side5_score: Fraction    # a + 5b/4 + 5c/3 + 5d/2 - 125/2

    @classmethod
    def from_stats(cls, stats: StatVector) -> "DefectScores":
        if stats.n != 4:
            raise ValueError("defect scores are defined for 4D statistics")
        a, b, c, d, e = (Fraction(x) for x in stats.entries)
        return cls(
            deficit=356 - (4 * a + 6 * b + 10 * c + 20 * d + 60 * e),
            edge_score=12 * a + Fraction(15, 2) * b + Fraction(20, 3) * c
            + Fraction(15, 2) * d + 12 * e,
            centre_score=15 * a + 5 * b + Fraction(5, 2) * c
            + Fraction(3, 2) * d + e,
            side5_score=a + Fraction(5, 4) * b + Fraction(5, 3) * c
            + Fraction(5, 2) * d - Fraction(125, 2),
        )


def corner_slice_stats(A: PointSet) -> list[StatVector]:
    """Statistics of the 60 corner slices (two coordinates fixed non-2)."""
    if (A.n, A.k) != (6, 3):
        raise ValueError("corner slices are defined for [3]^6")
    out = []
    for ax1 in range(6):
        for ax2 in range(ax1 + 1, 6):
            for v1 in (1, 3):
                for v2 in (1, 3):
                    B = cube.slice_extract(A, ax2, v2)
                    B = cube.slice_extract(B, ax1, v1)
                    out.append(statistics(B))
    return out


def check_defect_identity(A: PointSet) -> Fraction:
    """Average corner-slice deficit of A ⊆ [3]^6; must equal
    356 - |A| + a_5(A) + a_6(A).  Returns the average."""
    stats6 = statistics(A)
    slices = corner_slice_stats(A)
    avg = sum(
        (DefectScores.from_stats(s).deficit for s in slices), Fraction(0)
    ) / len(slices)
    expected = 356 - stats6.size + stats6.entries[5] + stats6.entries[6]
    if avg != expected:
        raise InternalCheckError(
            f"corner deficit average {avg} != {expected}"
        )
    return avg


# ---------------------------------------------------------------------------
# Random Moser sampling (seeded, reproducible)


def sample_moser_sets(n: int, count: int, seed: int, density: float = 0.5) -> list[int]:
    """Seeded Moser samples of [3]^n as bit masks.

    Draws a uniform random subset and greedily deletes one point from each
    surviving geometric line until none remains.
    """
    rng = random.Random(seed)
    cells = cube_cells(n, 3)
    table = line_index_table(n, 3, "geometric")
    out = []
    for _ in range(count):
        bits = 0
        for i in range(cells):
            if rng.random() < density:
                bits |= 1 << i
        changed = True
        while changed:
            changed = False
            for pts in table:
                ok = True
                for p in pts:
                    if not bits >> p & 1:
                        ok = False
                        break
                if ok:
                    bits &= ~(1 << pts[rng.randrange(len(pts))])
                    changed = True
        out.append(bits)
    return out


def sample_moser_statistics(n: int, count: int, seed: int,
                            density: float = 0.5) -> np.ndarray:
    """Statistics of `count` seeded Moser samples (bulk, vectorised).

    Same repair scheme as :func:`sample_moser_sets` (uniform subset, then
    one random deletion per surviving geometric line, repeated), driven
    by a numpy generator so hundreds of thousands of samples are cheap.
    Returns an int64 array of shape (count, n + 1).
    """
    rng = np.random.default_rng(seed)
    cells = cube_cells(n, 3)
    lines = np.array(line_index_table(n, 3, "geometric"), dtype=np.int64)
    sphere_onehot = np.zeros((cells, n + 1), dtype=np.int64)
    for i in range(n + 1):
        m = sphere_mask(n, n - i)
        for idx in range(cells):
            if m >> idx & 1:
                sphere_onehot[idx, i] = 1
    stats = np.empty((count, n + 1), dtype=np.int64)
    for row in range(count):
        member = rng.random(cells) < density
        while True:
            contained = member[lines].all(axis=1)
            viol = np.nonzero(contained)[0]
            if viol.size == 0:
                break
            picks = rng.integers(0, lines.shape[1], size=viol.size)
            member[lines[viol, picks]] = False
        stats[row] = member @ sphere_onehot
    return stats


def corner_pair_graph(n: int) -> list[int]:
    """Adjacency masks of the distance-2 graph on the corner sphere."""
    idxs = [i for i in range(cube_cells(n, 3)) if sphere_mask(n, n) >> i & 1]
    m = len(idxs)
    adj = [0] * m
    for a in range(m):
        for b in range(a + 1, m):
            if hamming_index(idxs[a], idxs[b], n, 3) == 2:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return adj


def count_deficiency_free_subsets(n: int, size: int) -> int:
    """Number of `size`-subsets of the corner sphere with no pair at
    Hamming distance two (independent sets of the distance-2 graph)."""
    from .fourd import _count_independent

    adj = corner_pair_graph(n)
    return _count_independent(adj, (1 << len(adj)) - 1, size)


# ---------------------------------------------------------------------------
# Certificates


CERT_KINDS = ("line-free", "moser", "cap-set", "fujimura", "moser-b")


@dataclass
class Certificate:
    """A serialised set plus claims that the verifier re-checks."""

    n: int
    k: int
    kind: str
    points: list[str] = field(default_factory=list)  # sorted digit strings
    simplex_points: list[list[int]] = field(default_factory=list)
    extra_points: list[str] = field(default_factory=list)  # augmentation words
    claim: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    version: str = FORMAT_VERSION

    def to_json(self) -> str:
        payload = {
            "version": self.version,
            "n": self.n,
            "k": self.k,
            "kind": self.kind,
            "points": sorted(self.points),
            "simplex_points": sorted(map(list, self.simplex_points)),
            "extra_points": sorted(self.extra_points),
            "claim": self.claim,
            "provenance": self.provenance,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        raw = json.loads(text)
        return cls(
            n=raw["n"],
            k=raw["k"],
            kind=raw["kind"],
            points=list(raw.get("points", [])),
            simplex_points=[list(p) for p in raw.get("simplex_points", [])],
            extra_points=list(raw.get("extra_points", [])),
            claim=dict(raw.get("claim", {})),
            provenance=dict(raw.get("provenance", {})),
            version=str(raw.get("version", FORMAT_VERSION)),
        )

    def point_set(self) -> PointSet:
        return PointSet.from_texts(self.points, self.k, n=self.n)


def make_certificate(
    A: PointSet, kind: str, claim: dict | None = None, provenance: dict | None = None
) -> Certificate:
    claim = dict(claim or {})
    claim.setdefault("size", A.size)
    if A.k == 3 and kind in ("line-free", "moser"):
        claim.setdefault("statistics", list(statistics(A).entries))
    return Certificate(
        n=A.n,
        k=A.k,
        kind=kind,
        points=A.texts(),
        claim=claim,
        provenance=dict(provenance or {}),
    )


def make_simplex_certificate(
    B: Iterable[tuple[int, ...]],
    n: int,
    k: int,
    kind: str,
    extras: Iterable[str] = (),
    claim: dict | None = None,
    provenance: dict | None = None,
) -> Certificate:
    B = sorted(B)
    extras = sorted(extras)
    claim = dict(claim or {})
    weight = sum(cell_size(p) for p in B) + len(extras)
    claim.setdefault("weight", weight)
    return Certificate(
        n=n,
        k=k,
        kind=kind,
        simplex_points=[list(p) for p in B],
        extra_points=list(extras),
        claim=claim,
        provenance=dict(provenance or {}),
    )


@dataclass
class VerifyReport:
    ok: bool
    failures: list[str]

    def __bool__(self) -> bool:
        return self.ok


def _verify_point_certificate(cert: Certificate) -> list[str]:
    failures = []
    A = cert.point_set()
    if len(cert.points) != len(set(cert.points)):
        failures.append("duplicate points")
    predicate = {"line-free": is_line_free, "moser": is_moser, "cap-set": is_cap_set}[
        cert.kind
    ]
    if cert.kind == "line-free":
        witness = _contains_line(A, "combinatorial")
    elif cert.kind == "moser":
        witness = _contains_line(A, "geometric")
    else:
        witness = None if predicate(A) else ()
    if witness is not None:
        if witness:
            line = ", ".join(Word.from_index(i, cert.n, cert.k).text for i in witness)
            failures.append(f"contains a forbidden line: {{{line}}}")
        else:
            failures.append("predicate violated")
    if "size" in cert.claim and cert.claim["size"] != A.size:
        failures.append(f"claimed size {cert.claim['size']} but found {A.size}")
    if "statistics" in cert.claim:
        actual = list(statistics(A).entries)
        if cert.claim["statistics"] != actual:
            failures.append(
                f"claimed statistics {cert.claim['statistics']} but found {actual}"
            )
    return failures


def _verify_simplex_certificate(cert: Certificate) -> list[str]:
    failures = []
    B = [tuple(p) for p in cert.simplex_points]
    if len(B) != len(set(B)):
        failures.append("duplicate simplex points")
    for p in B:
        if len(p) != cert.k or any(a < 0 for a in p) or sum(p) != cert.n:
            failures.append(f"invalid simplex point {p}")
            return failures
    if cert.kind == "fujimura":
        if cert.extra_points:
            failures.append("fujimura certificates carry no extra points")
        tri = next(iter(simplex_triples(B, cert.n)), None)
        if tri is not None:
            failures.append(f"contains the simplex {tri}")
    else:  # moser-b
        from .construct import check_augmented_b  # local import, no cycle

        errors = check_augmented_b(B, cert.extra_points, cert.n)
        failures.extend(errors)
    weight = sum(cell_size(p) for p in B) + len(cert.extra_points)
    if "weight" in cert.claim and cert.claim["weight"] != weight:
        failures.append(f"claimed weight {cert.claim['weight']} but found {weight}")
    if "size" in cert.claim and cert.claim["size"] != weight:
        failures.append(f"claimed size {cert.claim['size']} but found {weight}")
    return failures


def verify_certificate(cert: Certificate) -> VerifyReport:
    """Re-check a certificate field by field."""
    if cert.kind not in CERT_KINDS:
        return VerifyReport(False, [f"unknown certificate kind {cert.kind!r}"])
    try:
        if cert.kind in ("line-free", "moser", "cap-set"):
            failures = _verify_point_certificate(cert)
        else:
            failures = _verify_simplex_certificate(cert)
    except (ValueError, KeyError) as exc:
        return VerifyReport(False, [f"malformed certificate: {exc}"])
    if "bound" in cert.claim and "weight" in cert.claim:
        if cert.claim["bound"] != cert.claim["weight"]:
            failures.append("claimed bound does not match recomputed weight")
    return VerifyReport(not failures, failures)
