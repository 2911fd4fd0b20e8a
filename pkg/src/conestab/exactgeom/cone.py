"""Exact rational polyhedral cones: construction, duality, triangulation.

A cone is stored with both generators (primitive integer rays) and a
halfspace description (primitive integer covectors h with <h,x> >= 0), and
the two are cross-checked at construction time.  All cones handled here are
pointed and full-dimensional; the dual of such a cone is again of that kind,
and ``dual_cone`` is an involution on the class.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..errors import DegenerateCone, NotFullDimensional
from .linalg import dot, is_zero, mat_rank, nullspace, primitivize, vec


@dataclass(frozen=True)
class Cone:
    """Pointed full-dimensional rational cone with both representations.

    rays:       primitive integer generators (V-representation)
    halfspaces: primitive integer covectors, cone = {x : <h,x> >= 0 for all h}
    """

    rank: int
    rays: tuple
    halfspaces: tuple

    def contains(self, x, strict=False) -> bool:
        if strict:
            return all(dot(h, x) > 0 for h in self.halfspaces)
        return all(dot(h, x) >= 0 for h in self.halfspaces)

    def interior_point(self):
        """Sum of the primitive rays; interior for full-dimensional cones."""
        pt = [Fraction(0)] * self.rank
        for r in self.rays:
            pt = [a + b for a, b in zip(pt, r)]
        return tuple(pt)


def _facet_normals(rays, n):
    """Facet normals of cone(rays) in R^n by scanning (n-1)-subsets."""
    if n == 1:
        # A pointed full-dim cone in R^1 is a single ray; the facet is {0}.
        sign = 1 if rays[0][0] > 0 else -1
        return [(sign,)]
    normals = set()
    for sub in combinations(rays, n - 1):
        if mat_rank(sub) != n - 1:
            continue
        kernel = nullspace(sub, n)
        if len(kernel) != 1:
            continue
        h = primitivize(kernel[0])
        vals = [dot(h, r) for r in rays]
        if all(v >= 0 for v in vals):
            normals.add(h)
        elif all(v <= 0 for v in vals):
            normals.add(tuple(-a for a in h))
    return sorted(normals)


def cone_from_rays(rays) -> Cone:
    """Build a validated cone from generators.

    Rays are primitivized and deduplicated.  Raises DegenerateCone when the
    rays do not span R^n or span a non-pointed cone.
    """
    rays = [primitivize(vec(r)) for r in rays]
    rays = sorted({r for r in rays if not is_zero(r)})
    if not rays:
        raise DegenerateCone("no nonzero rays")
    n = len(rays[0])
    if mat_rank(rays) < n:
        raise DegenerateCone("rays do not span the ambient space")
    normals = _facet_normals(rays, n)
    if mat_rank(normals) < n:
        # The normals span less than R^n exactly when the cone contains a line.
        raise DegenerateCone("cone is not pointed")
    # Drop generators that are not extreme (positive combinations of others).
    extreme = []
    for r in rays:
        tight = [h for h in normals if dot(h, r) == 0]
        if mat_rank(tight) == n - 1:
            extreme.append(r)
    cone = Cone(rank=n, rays=tuple(sorted(extreme)), halfspaces=tuple(normals))
    _validate(cone)
    return cone


def cone_from_halfspaces(halfspaces) -> Cone:
    """Build a cone from covectors {x : <h,x> >= 0}; dual scan for rays."""
    hs = [primitivize(vec(h)) for h in halfspaces]
    hs = sorted({h for h in hs if not is_zero(h)})
    if not hs:
        raise DegenerateCone("no halfspaces")
    n = len(hs[0])
    rays = _facet_normals(hs, n)  # duality: rays of C are facet normals of C^v
    if mat_rank(rays) < n:
        raise DegenerateCone("halfspace cone is not full-dimensional")
    return cone_from_rays(rays)


def _validate(cone: Cone):
    for r in cone.rays:
        for h in cone.halfspaces:
            if dot(h, r) < 0:
                raise DegenerateCone("V/H cross-check failed")
    interior = cone.interior_point()
    if any(dot(h, interior) <= 0 for h in cone.halfspaces):
        raise NotFullDimensional("cone has empty interior")


def dual_cone(c: Cone) -> Cone:
    """Dual cone {a : <a,v> >= 0 for every v in c}.

    For pointed full-dimensional cones the dual swaps the two
    representations, and applying it twice returns the original cone.
    """
    interior = c.interior_point()
    if any(dot(h, interior) <= 0 for h in c.halfspaces):
        raise NotFullDimensional("dual of a lower-dimensional cone is not pointed")
    return Cone(rank=c.rank, rays=tuple(sorted(primitivize(h) for h in c.halfspaces)),
                halfspaces=tuple(sorted(primitivize(r) for r in c.rays)))


def _triangulate_rays(rays, ambient):
    """Split cone(rays) into simplicial subcones on the same ray set.

    Works recursively on faces.  The apex is the lexicographically smallest
    ray, which makes the decomposition deterministic.
    """
    rays = sorted(rays)
    d = mat_rank(rays)
    if len(rays) == d:
        return [tuple(rays)]
    apex = rays[0]
    # Facets of the cone within its span: scan (d-1)-subsets in span coords.
    basis = _span_basis(rays, ambient)
    coords = {r: _coords_in_basis(r, basis) for r in rays}
    normals = _facet_normals([coords[r] for r in rays], d)
    simplices = []
    for h in normals:
        tight = [r for r in rays if dot(h, coords[r]) == 0]
        if apex in tight:
            continue
        for facet_simplex in _triangulate_rays(tight, ambient):
            simplices.append(tuple(sorted((apex,) + facet_simplex)))
    return simplices


def _span_basis(rays, ambient):
    basis = []
    for r in rays:
        if mat_rank(basis + [r]) > len(basis):
            basis.append(r)
    return basis


def _coords_in_basis(v, basis):
    from .linalg import solve
    cols = list(zip(*basis))  # ambient x d
    sol = solve(cols, v)
    if sol is None:
        raise DegenerateCone("vector outside span during triangulation")
    return sol


def cone_triangulate(c: Cone):
    """Deterministic triangulation of a cone into simplicial ray tuples."""
    return _triangulate_rays(list(c.rays), c.rank)
