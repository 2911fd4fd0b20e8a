"""Exact polytopes, volumes, barycenters and piecewise-linear integration.

Bounded polytopes are triangulated by homogenizing to a pointed cone one
dimension up and reusing the cone triangulation; tie-breaking is
lexicographic throughout, so volumes, barycenters and integrals are
reproducible bit for bit.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from ..errors import Unbounded, UnboundedSlice, ZeroVolume
from .cone import Cone, _triangulate_rays
from .linalg import det, dot, frac, mat_rank, primitivize, solve, vec, vzero


@dataclass(frozen=True)
class Polytope:
    """Convex rational polyhedron with explicit V- and H-representations.

    vertices:       tuple of rational points
    recession_rays: tuple of primitive integer rays (empty iff bounded)
    halfspaces:     tuple of (covector a, offset b) meaning <a,x> <= b
    """

    dim: int
    vertices: tuple
    recession_rays: tuple
    halfspaces: tuple

    @property
    def bounded(self) -> bool:
        return not self.recession_rays

    def contains(self, x) -> bool:
        return all(dot(a, x) <= b for a, b in self.halfspaces)


def slice_polytope(c: Cone, xi, level, equality=False) -> Polytope:
    """Cut a cone by <x, xi> <= level (or = level when ``equality``).

    Requires <xi, r> > 0 on every ray of c, which makes the slice bounded.
    Vertices are the apex (inequality case only) together with each ray
    scaled onto the cutting hyperplane.
    """
    xi = vec(xi)
    level = frac(level)
    pairings = [dot(xi, r) for r in c.rays]
    if any(p <= 0 for p in pairings):
        raise UnboundedSlice("slicing covector vanishes on a ray")
    scaled = [tuple(level * x / p for x in r) for r, p in zip(c.rays, pairings)]
    hs = [(tuple(-x for x in h), Fraction(0)) for h in c.halfspaces]
    if equality:
        verts = scaled
        hs += [(xi, level), (tuple(-x for x in xi), -level)]
    else:
        verts = [vzero(c.rank)] + scaled
        hs += [(xi, level)]
    return Polytope(dim=c.rank, vertices=tuple(verts), recession_rays=(),
                    halfspaces=tuple(hs))


def polytope_from_halfspaces(halfspaces, dim) -> Polytope:
    """Vertex-enumerate a bounded H-polytope by scanning dim-subsets."""
    verts = enumerate_vertices(halfspaces, dim)
    return Polytope(dim=dim, vertices=tuple(verts), recession_rays=(),
                    halfspaces=tuple(halfspaces))


def enumerate_vertices(halfspaces, dim):
    """All vertices of {x : <a,x> <= b}; assumes the region is bounded."""
    seen = set()
    out = []
    for sub in combinations(range(len(halfspaces)), dim):
        rows = [halfspaces[i][0] for i in sub]
        rhs = [halfspaces[i][1] for i in sub]
        x = solve(rows, rhs)
        if x is None:
            continue
        if all(dot(a, x) <= b for a, b in halfspaces):
            if x not in seen:
                seen.add(x)
                out.append(x)
    return sorted(out)


def triangulate(p: Polytope):
    """Split a bounded polytope into simplices on its own vertex set.

    Homogenizes to a cone at height one and triangulates that cone; the
    height-one cross-sections of the simplicial subcones tile the polytope.
    """
    if not p.bounded:
        raise Unbounded("cannot triangulate an unbounded polyhedron")
    lifted = [tuple(v) + (Fraction(1),) for v in p.vertices]
    prim = {}
    for v, lift in zip(p.vertices, lifted):
        prim[primitivize(lift)] = v
    if mat_rank(list(prim)) < p.dim + 1:
        return []  # lower-dimensional: nothing of full measure to triangulate
    simplices = []
    for simplex in _triangulate_rays(list(prim), p.dim + 1):
        simplices.append(tuple(prim[r] for r in simplex))
    return simplices


def _simplex_volume(verts):
    v0 = verts[0]
    edges = [[x - y for x, y in zip(v, v0)] for v in verts[1:]]
    n = len(edges)
    return abs(det(edges)) / factorial(n)


def volume(p: Polytope) -> Fraction:
    """Exact Euclidean volume of a bounded polytope (0 if degenerate)."""
    if not p.bounded:
        raise Unbounded("volume of an unbounded polyhedron")
    if len(p.vertices) <= p.dim:
        return Fraction(0)
    if mat_rank([[x - y for x, y in zip(v, p.vertices[0])] for v in p.vertices[1:]]) < p.dim:
        return Fraction(0)
    total = Fraction(0)
    for s in triangulate(p):
        total += _simplex_volume(s)
    return total


def barycenter(p: Polytope):
    """Volume-weighted centroid; requires positive volume."""
    if not p.bounded:
        raise Unbounded("barycenter of an unbounded polyhedron")
    total = Fraction(0)
    acc = list(vzero(p.dim))
    if len(p.vertices) > p.dim:
        for s in triangulate(p):
            w = _simplex_volume(s)
            if w == 0:
                continue
            centroid = [sum(v[i] for v in s) / (p.dim + 1) for i in range(p.dim)]
            total += w
            acc = [a + w * c for a, c in zip(acc, centroid)]
    if total == 0:
        raise ZeroVolume("degenerate polytope has no barycenter")
    return tuple(a / total for a in acc)


def second_moment(p: Polytope):
    """Matrix of integrals int_p x_i x_j dx, exact.

    For a simplex with vertices v_0..v_n the moment matrix is
    vol/((n+1)(n+2)) * (sum_k v_k v_k^T + (sum_k v_k)(sum_k v_k)^T).
    """
    n = p.dim
    M = [[Fraction(0)] * n for _ in range(n)]
    for s in triangulate(p):
        w = _simplex_volume(s)
        if w == 0:
            continue
        total = [sum(v[i] for v in s) for i in range(n)]
        scale = w / ((n + 1) * (n + 2))
        for i in range(n):
            for j in range(n):
                acc = sum(v[i] * v[j] for v in s) + total[i] * total[j]
                M[i][j] += scale * acc
    return tuple(tuple(row) for row in M)


@dataclass(frozen=True)
class PLConcave:
    """Min of finitely many linear forms: g(x) = min_j <covectors[j], x>.

    Positively homogeneous, concave and superadditive wherever all covectors
    are nonnegative together; the reduction to an irredundant covector list
    happens against a reference cone in the filtration layer.
    """

    covectors: tuple

    def value(self, x) -> Fraction:
        return min(dot(z, x) for z in self.covectors)

    def __post_init__(self):
        if not self.covectors:
            raise ValueError("PLConcave needs at least one covector")


def integrate_pl(p: Polytope, g: PLConcave) -> Fraction:
    """Exact integral of g over a bounded polytope.

    Splits p along the hyperplanes where two covectors tie, leaving chambers
    on which a single covector is the minimum, then integrates that linear
    form simplex by simplex (vol * value at centroid).
    """
    if not p.bounded:
        raise Unbounded("integral over an unbounded polyhedron")
    covs = []
    for z in g.covectors:  # duplicates would make chambers overlap fully
        if z not in covs:
            covs.append(z)
    if len(p.vertices) == 1:
        return Fraction(0)
    total = Fraction(0)
    for j, zj in enumerate(covs):
        hs = list(p.halfspaces)
        for i, zi in enumerate(covs):
            if i == j:
                continue
            # chamber where zj is minimal: <zj - zi, x> <= 0
            hs.append((tuple(a - b for a, b in zip(zj, zi)), Fraction(0)))
        verts = enumerate_vertices(hs, p.dim)
        if len(verts) <= p.dim:
            continue
        chamber = Polytope(dim=p.dim, vertices=tuple(verts), recession_rays=(),
                           halfspaces=tuple(hs))
        if mat_rank([[x - y for x, y in zip(v, verts[0])] for v in verts[1:]]) < p.dim:
            continue
        for s in triangulate(chamber):
            w = _simplex_volume(s)
            if w == 0:
                continue
            centroid = [sum(v[i] for v in s) / (p.dim + 1) for i in range(p.dim)]
            total += w * dot(zj, centroid)
    return total
