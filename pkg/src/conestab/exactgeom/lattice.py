"""Deterministic lattice-point enumeration inside sliced cones."""

import os
from fractions import Fraction
from math import ceil, floor

from ..errors import BudgetExceeded, UnboundedSlice
from .cone import Cone
from .linalg import dot, frac, vec

DEFAULT_BUDGET = 10 ** 7


def enumeration_budget() -> int:
    """Point budget for enumerations; CONESTAB_BUDGET overrides the default."""
    raw = os.environ.get("CONESTAB_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_BUDGET


def lattice_points_below(c: Cone, xi, m, budget=None, strict=True):
    """All integer points a in c with <a, xi> < m, in lexicographic order.

    With ``strict=False`` the bound is <a, xi> <= m instead.  The covector
    xi must be strictly positive on the cone so the region is finite.
    Raises BudgetExceeded rather than silently truncating.
    """
    xi = vec(xi)
    m = frac(m)
    budget = enumeration_budget() if budget is None else budget
    pairings = [dot(xi, r) for r in c.rays]
    if any(p <= 0 for p in pairings):
        raise UnboundedSlice("enumeration region is unbounded")
    n = c.rank
    # Coordinate bounds come from the vertices of the <= m slice: the origin
    # and each ray scaled onto the bounding hyperplane.
    verts = [tuple(Fraction(0) for _ in range(n))]
    verts += [tuple(m * x / p for x in r) for r, p in zip(c.rays, pairings)]
    lo = [min(v[i] for v in verts) for i in range(n)]
    hi = [max(v[i] for v in verts) for i in range(n)]
    lo = [ceil(x) for x in lo]
    hi = [floor(x) for x in hi]

    out = []
    count = 0
    point = [0] * n

    def descend(i):
        nonlocal count
        if i == n:
            pt = tuple(point)
            if all(dot(h, pt) >= 0 for h in c.halfspaces):
                w = dot(xi, pt)
                if (w < m) if strict else (w <= m):
                    count += 1
                    if count > budget:
                        raise BudgetExceeded(
                            f"lattice enumeration exceeded budget {budget}")
                    out.append(pt)
            return
        for a in range(lo[i], hi[i] + 1):
            point[i] = a
            descend(i + 1)

    descend(0)
    return out
