"""Exact computations with line-free and Moser sets in the cube [k]^n.

The package is organised around a compact integer encoding of words and
point sets (see :mod:`hjm.cube`), the combinatorial and geometric symmetry
groups (:mod:`hjm.symmetry`), exact predicates and certificate re-checking
(:mod:`hjm.verify`), exhaustive and sharded searches (:mod:`hjm.search`),
lower-bound generators (:mod:`hjm.construct`) and exact optimisers over
simplex grids plus a rational-arithmetic LP (:mod:`hjm.optimize`).
"""

__version__ = "0.1.0"
