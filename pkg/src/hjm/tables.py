"""Bundled reference data.

``CODE_TABLE_RAW`` lists known maximum sizes A(n,d) of binary codes of
length n and minimum Hamming distance d (standard coding-theory data).
``PARETO4_RAW`` is the previously computed reference table of
Pareto-optimal statistics of Moser sets in [3]^4, grouped by the corner
count a with trailing zeros dropped; it serves as the published-input
mode for the 6D linear program and as a cross-check for the sharded 4D
search.
"""

from __future__ import annotations

import logging
from math import comb

log = logging.getLogger(__name__)

# (n, d) -> A(n, d); rows n = 1..13
CODE_TABLE_RAW: dict[tuple[int, int], int] = {
    (1, 1): 2,
    (2, 1): 4, (2, 2): 2,
    (3, 1): 8, (3, 2): 4, (3, 3): 2,
    (4, 1): 16, (4, 2): 8, (4, 3): 2, (4, 4): 2,
    (5, 1): 32, (5, 2): 16, (5, 3): 4, (5, 4): 2, (5, 5): 2,
    (6, 1): 64, (6, 2): 32, (6, 3): 8, (6, 4): 4, (6, 5): 2, (6, 6): 2,
    (7, 1): 128, (7, 2): 64, (7, 3): 16, (7, 4): 8, (7, 5): 2, (7, 6): 2,
    (7, 7): 2,
    (8, 1): 256, (8, 2): 128, (8, 3): 20, (8, 4): 16, (8, 5): 4, (8, 6): 2,
    (8, 7): 2, (8, 8): 2,
    (9, 1): 512, (9, 2): 256, (9, 3): 40, (9, 4): 20, (9, 5): 6, (9, 6): 4,
    (9, 7): 2, (9, 8): 2,
    (10, 1): 1024, (10, 2): 512, (10, 3): 72, (10, 4): 40, (10, 5): 12,
    (10, 6): 6, (10, 7): 2, (10, 8): 2,
    (11, 1): 2048, (11, 2): 1024, (11, 3): 144, (11, 4): 72, (11, 5): 24,
    (11, 6): 12, (11, 7): 2, (11, 8): 2,
    (12, 1): 4096, (12, 2): 2048, (12, 3): 256, (12, 4): 144, (12, 5): 32,
    (12, 6): 24, (12, 7): 4, (12, 8): 2,
    (13, 1): 8192, (13, 2): 4096, (13, 3): 512, (13, 4): 256, (13, 5): 64,
    (13, 7): 8, (13, 8): 4,
    # The customary printing of this table mislabels the (13, 6) entry; the
    # identity A(n, 2e) = A(n-1, 2e-1) pins it to A(12, 5) = 32.
    (13, 6): 32,
}


class CodeTable:
    """A(n,d) lookups backed by the stored table plus the standard identities.

    Identities used as fallbacks: A(n,1) = 2^n, A(n,2) = 2^(n-1),
    A(n,2e) = A(n-1,2e-1), and A(n,d) = 2 for d > 2n/3.
    """

    def __init__(self, table: dict[tuple[int, int], int] | None = None):
        self.table = dict(CODE_TABLE_RAW if table is None else table)
        self._check()

    def _check(self) -> None:
        for (n, d), v in sorted(self.table.items()):
            if d % 2 == 0 and (n - 1, d - 1) in self.table:
                other = self.table[(n - 1, d - 1)]
                if other != v:
                    log.warning(
                        "code table conflict at A(%d,%d)=%d vs A(%d,%d)=%d; "
                        "keeping the identity-derived value",
                        n, d, v, n - 1, d - 1, other,
                    )
                    self.table[(n, d)] = other
            if 3 * d > 2 * n and v != 2:
                log.warning("A(%d,%d)=%d but d > 2n/3 forces 2", n, d, v)

    def get(self, n: int, d: int) -> int:
        if d > n:
            if d <= 0 or n <= 0:
                raise KeyError((n, d))
            return 1
        if (n, d) in self.table:
            return self.table[(n, d)]
        if d == 1:
            return 2**n
        if d == 2:
            return 2 ** (n - 1)
        if 3 * d > 2 * n:
            return 2
        if d % 2 == 0:
            return self.get(n - 1, d - 1)
        raise KeyError(f"A({n},{d}) not covered by the table or identities")

    def check_monotone(self, n: int) -> bool:
        vals = [self.get(n, d) for d in range(1, n + 1)]
        return all(x >= y for x, y in zip(vals, vals[1:]))


# ---------------------------------------------------------------------------
# Reference Pareto-optimal statistics of Moser sets in [3]^4.
# Key: corner count a; entries: (b, c, d, e) with trailing zeros dropped.

PARETO4_RAW: dict[int, list[tuple[int, ...]]] = {
    3: [(16, 24)],
    4: [(14, 19, 2), (15, 24), (16, 8, 4, 1), (16, 14, 4), (16, 23),
        (17, 21), (18, 19)],
    5: [(12, 12, 4, 1), (12, 13, 6), (12, 15, 5), (12, 19, 2),
        (13, 10, 4, 1), (13, 14, 5), (13, 21, 1), (15, 9, 4, 1),
        (15, 12, 3, 1), (15, 13, 5), (15, 18, 3), (15, 20, 1), (15, 22),
        (16, 7, 4, 1), (16, 10, 3, 1), (16, 11, 5), (16, 12, 2, 1),
        (16, 16, 3), (16, 19, 1), (16, 21), (17, 12, 4), (17, 14, 3),
        (17, 16, 2), (17, 18, 1), (17, 20), (18, 13, 3), (18, 14, 2),
        (20, 8, 4), (20, 10, 3), (20, 13, 2), (20, 14, 1), (20, 18),
        (21, 10, 2), (21, 15), (22, 13)],
    6: [(8, 12, 8), (10, 11, 4, 1), (11, 12, 7), (12, 10, 7), (12, 13, 5),
        (12, 18, 4), (13, 16, 4), (14, 9, 4, 1), (14, 9, 7), (14, 12, 6),
        (14, 16, 3), (14, 19, 1), (14, 21), (15, 7, 4, 1), (15, 10, 3, 1),
        (15, 10, 6), (15, 11, 2, 1), (15, 12, 5), (15, 15, 4), (15, 20),
        (16, 7, 3, 1), (16, 8, 6), (16, 9, 2, 1), (16, 10, 5),
        (16, 12, 1, 1), (16, 13, 4), (16, 14, 3), (16, 18, 2), (16, 19),
        (17, 9, 5), (17, 10, 4), (17, 13, 3), (17, 15, 2), (17, 17, 1),
        (17, 18), (18, 13, 2), (18, 16, 1), (18, 17), (19, 9, 4),
        (19, 12, 3), (19, 15, 1), (20, 7, 4), (20, 9, 3), (20, 12, 2),
        (20, 13, 1), (20, 15), (21, 8, 3), (21, 9, 2), (21, 12, 1),
        (21, 14), (22, 7, 3), (22, 8, 2), (22, 10, 1), (23, 9, 1),
        (24, 7, 2), (24, 8, 1), (24, 12), (25, 9), (26, 7)],
    7: [(8, 6, 8), (11, 9, 4, 1), (11, 12, 6), (12, 8, 4, 1), (12, 8, 6),
        (12, 12, 3, 1), (12, 12, 5), (12, 13, 4), (12, 15, 3), (12, 17, 2),
        (13, 7, 4, 1), (13, 10, 3, 1), (13, 11, 5), (13, 12, 2, 1),
        (13, 12, 4), (13, 14, 3), (13, 16, 2), (14, 6, 4, 1), (14, 6, 7),
        (14, 9, 5), (14, 10, 2, 1), (14, 12, 1, 1), (14, 17, 1), (14, 19),
        (15, 7, 5), (15, 8, 3, 1), (15, 9, 2, 1), (15, 11, 1, 1),
        (15, 11, 4), (15, 13, 3), (15, 16, 1), (16, 6, 3, 1), (16, 6, 6),
        (16, 8, 2, 1), (16, 10, 1, 1), (16, 10, 4), (16, 12, 0, 1),
        (16, 12, 3), (16, 15, 2), (16, 17), (17, 6, 5), (17, 7, 4),
        (17, 11, 3), (17, 13, 2), (17, 14, 1), (17, 16), (18, 10, 3),
        (18, 13, 1), (18, 15), (19, 9, 3), (20, 6, 4), (20, 11, 2),
        (20, 12, 1), (20, 14), (21, 8, 2), (21, 10, 1), (21, 12),
        (22, 9, 1), (22, 11), (23, 6, 3), (23, 7, 1), (23, 10),
        (24, 6, 2), (24, 9), (25, 6, 1), (25, 8), (26, 3, 1), (28, 6),
        (29, 3), (30, 1)],
    8: [(8, 0, 8), (8, 9, 7), (8, 12, 6), (9, 9, 4, 1), (9, 10, 6),
        (9, 12, 3, 1), (9, 12, 5), (9, 13, 4), (9, 15, 3), (10, 7, 4, 1),
        (10, 10, 3, 1), (10, 10, 5), (10, 12, 2, 1), (10, 12, 4),
        (10, 13, 3), (10, 15, 2), (11, 6, 4, 1), (11, 9, 6),
        (11, 10, 2, 1), (11, 11, 4), (12, 7, 6), (12, 9, 3, 1), (12, 9, 5),
        (12, 10, 4), (12, 12, 1, 1), (12, 14, 2), (12, 16, 1), (12, 18),
        (13, 7, 3, 1), (13, 7, 5), (13, 9, 2, 1), (13, 12, 0, 1),
        (13, 12, 3), (14, 0, 7), (14, 6, 6), (14, 7, 2, 1), (14, 8, 1, 1),
        (14, 9, 4), (14, 11, 0, 1), (14, 11, 3), (14, 13, 2), (14, 15, 1),
        (14, 17), (15, 6, 3, 1), (15, 6, 5), (15, 7, 1, 1), (16, 0, 6),
        (16, 4, 3, 1), (16, 4, 5), (16, 6, 2, 1), (16, 8, 4),
        (16, 9, 0, 1), (16, 10, 3), (16, 12, 2), (16, 14, 1), (16, 16),
        (17, 0, 5), (17, 3, 4), (17, 8, 3), (17, 10, 2), (17, 12, 1),
        (17, 14), (18, 9, 2), (18, 11, 1), (18, 12), (19, 6, 3),
        (19, 8, 2), (20, 0, 4), (20, 4, 3), (20, 7, 2), (20, 9, 1),
        (20, 11), (21, 4, 2), (21, 7, 1), (22, 3, 2), (22, 6, 1), (22, 9),
        (23, 0, 3), (23, 4, 1), (24, 0, 2), (24, 3, 1), (24, 8),
        (25, 1, 1), (25, 6), (26, 0, 1), (26, 4), (28, 3), (32,)],
    9: [(8, 10, 4), (9, 9, 4), (9, 12, 3), (10, 8, 4), (10, 10, 3),
        (10, 12, 2), (10, 13, 1), (10, 15), (11, 11, 2), (12, 7, 4),
        (12, 9, 3), (12, 12, 1), (12, 14), (13, 7, 3), (13, 10, 2),
        (14, 9, 2), (14, 11, 1), (14, 13), (15, 6, 3), (16, 0, 4),
        (16, 4, 3), (16, 8, 2), (16, 10, 1), (16, 12), (17, 3, 3),
        (17, 6, 2), (17, 8, 1), (17, 10), (18, 2, 3), (18, 4, 2),
        (18, 7, 1), (18, 9), (19, 0, 3), (19, 3, 2), (19, 6, 1),
        (20, 1, 2), (20, 5, 1), (20, 8), (21, 4, 1), (21, 6), (22, 1, 1),
        (22, 5), (24, 4), (25, 2), (28,)],
    10: [(8, 6, 4), (8, 8, 3), (9, 7, 3), (9, 10, 2), (9, 11, 1), (9, 13),
         (10, 5, 4), (10, 9, 2), (10, 12), (11, 6, 3), (12, 4, 4),
         (12, 5, 3), (12, 7, 2), (12, 10, 1), (12, 11), (13, 6, 2),
         (13, 8, 1), (13, 10), (14, 3, 3), (14, 5, 2), (14, 9),
         (15, 2, 3), (15, 7, 1), (16, 4, 2), (16, 6, 1), (16, 8),
         (17, 4, 1), (17, 6), (18, 2, 1), (18, 5), (20, 4), (21, 2),
         (22, 1), (24,)],
    11: [(4, 6, 4), (6, 5, 4), (7, 6, 3), (8, 4, 4), (8, 5, 3), (9, 6, 2),
         (9, 8, 1), (9, 10), (10, 3, 3), (10, 5, 2), (10, 9), (11, 2, 3),
         (11, 7, 1), (12, 4, 2), (12, 6, 1), (12, 8), (13, 4, 1), (13, 6),
         (14, 2, 1), (14, 5), (16, 4), (17, 2), (18, 1), (20,)],
    12: [(4, 3, 3), (6, 2, 3), (6, 5, 2), (6, 7, 1), (6, 9), (8, 4, 2),
         (8, 6, 1), (8, 8), (9, 4, 1), (9, 6), (10, 2, 1), (10, 5),
         (12, 4), (13, 2), (14, 1), (16,)],
    13: [(6, 5), (8, 4), (9, 2), (10, 1), (12,)],
    14: [(4, 3), (5, 2), (6, 1), (8,)],
    15: [(4,)],
    16: [(0,)],
}


def pareto4_reference() -> list[tuple[int, int, int, int, int]]:
    """The reference 4D frontier as full (a, b, c, d, e) tuples."""
    out = []
    for a, rows in sorted(PARETO4_RAW.items()):
        for row in rows:
            padded = tuple(row) + (0,) * (4 - len(row))
            out.append((a,) + padded)
    return out


def pareto4_reference_rows(a: int) -> list[tuple[int, int, int, int, int]]:
    return [t for t in pareto4_reference() if t[0] == a]


def check_pareto4_reference() -> list[str]:
    """Internal sanity of the reference table (ranges and non-domination)."""
    caps = [comb(4, i) * 2 ** (4 - i) for i in range(5)]
    problems = []
    rows = pareto4_reference()
    for t in rows:
        if any(not 0 <= v <= cap for v, cap in zip(t, caps)):
            problems.append(f"out of range: {t}")
    for i, t in enumerate(rows):
        for u in rows:
            if u != t and all(x >= y for x, y in zip(u, t)):
                problems.append(f"{t} dominated by {u}")
                break
    return problems
