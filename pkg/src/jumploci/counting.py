"""Exact counting and enumeration of d-torsion points on cosets and unions.

A point x of order dividing d is x = y/d with y in (Z/d)^N, so membership
in {A·x ≡ b} becomes the modular system A·y ≡ d·b (mod d), which is empty
unless d·b is integral.  The count of a modular system is read off the
Smith form of A; unions are handled by inclusion-exclusion over the
(stacked) intersections of their components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import CapExceeded, ComponentBudgetExceeded, DimensionMismatch
from .torus import CongruenceCoset, TorusPoint, snf

DEFAULT_COMPONENT_BUDGET = 12
DEFAULT_ENUM_CAP = 10_000_000


@dataclass(frozen=True)
class TorsionCount:
    """Exact count of the d-torsion points lying on one coset."""

    d: int
    value: int


def count_solutions_mod(rows: Sequence[Sequence[int]], rhs: Sequence[int], modulus: int,
                        *, width: int | None = None) -> int:
    """|{y in (Z/m)^N : A·y ≡ c (mod m)}| via the Smith form of A.

    With U·A·V = S diagonal, the system is equivalent to S·z ≡ U·c: each
    diagonal entry s contributes gcd(s, m) solutions when gcd(s, m) divides
    the transformed right-hand side (zero otherwise), and each column
    beyond the diagonal is free.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    k = len(rows)
    if k != len(rhs):
        raise DimensionMismatch("right-hand side length differs from the row count")
    if k == 0:
        if width is None:
            raise DimensionMismatch("width required for a system with no rows")
        return modulus ** width
    n = len(rows[0])
    if width is not None and width != n:
        raise DimensionMismatch("width disagrees with row length")
    s, u, _ = snf(rows)
    uc = [sum(u[i][j] * int(rhs[j]) for j in range(k)) for i in range(k)]
    count = 1
    diag = min(k, n)
    for i in range(diag):
        g = math.gcd(s[i][i], modulus)
        if uc[i] % g:
            return 0
        count *= g
    for i in range(diag, k):
        if uc[i] % modulus:
            return 0
    return count * modulus ** (n - diag)


def coset_torsion_count(coset: CongruenceCoset, d: int) -> TorsionCount:
    """Number of points of order dividing d on the coset, exactly.

    Zero unless d·b is integral (the only way a coset can miss the whole
    d-torsion grid); otherwise the modular count above.  For a nonempty
    connected coset the result is d^dim when the translate order divides d
    and 0 otherwise.
    """
    if d < 1:
        raise ValueError("d must be positive")
    scaled = []
    for b in coset.rhs:
        db = b * d
        if db.denominator != 1:
            return TorsionCount(d, 0)
        scaled.append(db.numerator)
    return TorsionCount(d, count_solutions_mod(coset.rows, scaled, d, width=coset.ambient_dim))


def union_torsion_count(components: Sequence[CongruenceCoset], d: int,
                        *, budget: int = DEFAULT_COMPONENT_BUDGET) -> int:
    """Exact |S_d ∩ (C_1 ∪ ... ∪ C_r)| by inclusion-exclusion.

    Every nonempty subset of components is intersected by stacking the
    systems and counted; the subset count grows as 2^r, so r is capped.
    """
    comps = list(components)
    if not comps:
        return 0
    ambient = comps[0].ambient_dim
    for c in comps:
        if c.ambient_dim != ambient:
            raise DimensionMismatch("union components live in different tori")
    if len(comps) > budget:
        raise ComponentBudgetExceeded(
            f"{len(comps)} components exceed the inclusion-exclusion budget of {budget}")
    total = 0
    for size in range(1, len(comps) + 1):
        sign = 1 if size % 2 else -1
        for subset in combinations(comps, size):
            meet = subset[0]
            for extra in subset[1:]:
                meet = meet.intersect(extra)
            total += sign * coset_torsion_count(meet, d).value
    return total


def enumerate_torsion(coset: CongruenceCoset, d: int,
                      *, cap: int = DEFAULT_ENUM_CAP) -> list[TorusPoint]:
    """All d-torsion points on the coset, by direct membership testing.

    This is the slow, independent route kept for cross-checking the closed
    forms; the grid size d^N is capped.
    """
    if d < 1:
        raise ValueError("d must be positive")
    n = coset.ambient_dim
    if d ** n > cap:
        raise CapExceeded(f"enumerating {d}^{n} points exceeds the cap of {cap}")
    points = []
    for ys in product(range(d), repeat=n):
        p = TorusPoint.of([Fraction(y, d) for y in ys])
        if coset.contains(p):
            points.append(p)
    return points
