"""Monomial filtrations on a toric cone singularity.

A torus-invariant, linearly bounded monomial filtration is captured by its
concave transform g = min_j <zeta_j, .> on the weight cone: the level-lambda
ideal is spanned by the monomials with g(exponent) >= lambda.  Construction
reduces the covector list to the unique irredundant form (via exact LPs), so
filtration equality is decidable by comparing tuples.

Besides the algebra of filtrations (rescale, twist, geodesic, intersection)
this module computes Newton polyhedra, saturation, exact orders, the orders
of the degree-m approximating filtrations, and the saturated closure of an
approximating filtration as a concave transform of its own.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .errors import (
    AmbientMismatch,
    BudgetExceeded,
    EmptyInput,
    NonpositiveScale,
    NotPrimary,
    OutsideWeightCone,
)
from .exactgeom import PLConcave, Polytope, dot, enumerate_vertices, frac, lattice_points_below, lp_solve, vec
from .singularity import ConeSingularity, ReebVector


@dataclass(frozen=True)
class MonomialFiltration:
    """Reduced monomial filtration over a fixed singularity."""

    ambient: ConeSingularity
    transform: PLConcave

    def ord(self, alpha) -> Fraction:
        return self.transform.value(alpha)

    @property
    def covectors(self):
        return self.transform.covectors


@dataclass(frozen=True)
class NewtonPolyhedron:
    """Region {g >= 1} in the weight cone: vertices plus recession cone."""

    polytope: Polytope

    @property
    def vertices(self):
        return self.polytope.vertices


def _reference_level(s: ConeSingularity):
    """Canonical strictly positive covector on the weight cone."""
    return s.sigma.interior_point()


def _reduce_covectors(s: ConeSingularity, covectors):
    """Drop covectors that never realize the minimum on the weight cone.

    zeta_j is redundant when max over the reference slice of
    min_{i != j} <zeta_i - zeta_j, alpha> is <= 0; that maximum is an exact
    epigraph LP.  Re-testing after each removal yields the unique minimal
    list for a full-dimensional weight cone.
    """
    covs = []
    for z in covectors:
        z = vec(z)
        if z not in covs:
            covs.append(z)
    ell = _reference_level(s)
    n = s.rank
    keep = list(covs)
    j = 0
    while j < len(keep):
        if len(keep) == 1:
            break
        others = [z for i, z in enumerate(keep) if i != j]
        # Variables (alpha, t): maximize t subject to
        # t <= <z_i - z_j, alpha>, alpha in weight cone, <ell, alpha> = 1.
        cons = []
        zj = keep[j]
        for zi in others:
            row = tuple(a - b for a, b in zip(zi, zj)) + (Fraction(-1),)
            cons.append((row, ">=", Fraction(0)))
        for v in s.sigma.rays:  # halfspaces of the weight cone
            cons.append((tuple(v) + (Fraction(0),), ">=", Fraction(0)))
        cons.append((tuple(ell) + (Fraction(0),), "==", Fraction(1)))
        objective = (Fraction(0),) * n + (Fraction(1),)
        res = lp_solve(objective, cons, sense="max")
        if res.value <= 0:
            keep.pop(j)
        else:
            j += 1
    return tuple(sorted(keep))


def monomial_filtration(s: ConeSingularity, covectors,
                        require_primary=True) -> MonomialFiltration:
    """Build a filtration from covectors, checking primarity and reducing.

    ``require_primary=False`` admits transforms that vanish along the
    boundary of the weight cone, e.g. filtrations cut out by an effective
    divisor; those still have exact S and lct but no finite rescaling
    duality.
    """
    covs = [vec(z) for z in covectors]
    if not covs:
        raise EmptyInput("a filtration needs at least one covector")
    for z in covs:
        for alpha in s.weight_cone.rays:
            val = dot(z, alpha)
            if val < 0 or (require_primary and val == 0):
                raise NotPrimary(
                    f"transform not positive on weight-cone ray {alpha}")
    reduced = _reduce_covectors(s, covs)
    return MonomialFiltration(ambient=s, transform=PLConcave(covectors=reduced))


def toric_filtration(s: ConeSingularity, xi) -> MonomialFiltration:
    """Filtration of the toric valuation of xi (single covector <xi, .>).

    xi may sit anywhere in the closed Reeb cone: boundary vectors give the
    filtrations of the torus-invariant divisors, whose transform vanishes
    along part of the weight cone but whose S, lct and Ding invariants are
    still exact.
    """
    if isinstance(xi, ReebVector):
        xi = xi.xi
    return monomial_filtration(s, [vec(xi)], require_primary=False)


def rescale(F: MonomialFiltration, a) -> MonomialFiltration:
    """a-rescaling: orders multiply by a; transform covectors scale by a."""
    a = frac(a)
    if a <= 0:
        raise NonpositiveScale(f"rescale factor must be positive, got {a}")
    covs = [tuple(a * x for x in z) for z in F.covectors]
    return MonomialFiltration(ambient=F.ambient,
                              transform=PLConcave(covectors=tuple(sorted(covs))))


def twist(F: MonomialFiltration, xi) -> MonomialFiltration:
    """Twist by a coweight: every covector shifts by xi.

    Any xi keeping the transform positive on the weight cone is accepted,
    which is wider than the open Reeb cone and is needed to probe the
    reduced J-norm near the boundary.
    """
    if isinstance(xi, ReebVector):
        xi = xi.xi
    xi = vec(xi)
    covs = [tuple(a + b for a, b in zip(z, xi)) for z in F.covectors]
    return monomial_filtration(F.ambient, covs)


def geodesic(filtrations, weights) -> MonomialFiltration:
    """Weighted combination with ord = sum of weighted ords.

    The transform of the combination is the distributive expansion
    min over selections of sum_i w_i <zeta_{i, j(i)}, .>, reduced.
    """
    filtrations = list(filtrations)
    weights = [frac(w) for w in weights]
    if not filtrations or len(filtrations) != len(weights):
        raise EmptyInput("need matching nonempty filtrations and weights")
    if any(w < 0 for w in weights) or all(w == 0 for w in weights):
        raise EmptyInput("weights must be nonnegative with at least one positive")
    ambient = filtrations[0].ambient
    for F in filtrations:
        if F.ambient != ambient:
            raise AmbientMismatch("geodesic across different singularities")
    combos = [tuple(Fraction(0) for _ in range(ambient.rank))]
    for F, w in zip(filtrations, weights):
        new = []
        for base in combos:
            for z in F.covectors:
                new.append(tuple(b + w * x for b, x in zip(base, z)))
        combos = new
    return monomial_filtration(ambient, combos)


def intersect(F: MonomialFiltration, G: MonomialFiltration) -> MonomialFiltration:
    """Intersection of filtrations: ord = min(ord_F, ord_G)."""
    if F.ambient != G.ambient:
        raise AmbientMismatch("intersection across different singularities")
    return monomial_filtration(F.ambient, list(F.covectors) + list(G.covectors))


def newton_polyhedron(F: MonomialFiltration) -> NewtonPolyhedron:
    """Vertices of {alpha in weight cone : g(alpha) >= 1}.

    The recession cone is the whole weight cone; the gauge of this region
    reproduces g, which is the saturation identity for monomial data.
    """
    s = F.ambient
    hs = []
    for z in F.covectors:
        hs.append((tuple(-x for x in z), Fraction(-1)))  # <z, a> >= 1
    for v in s.sigma.rays:
        hs.append((tuple(-x for x in v), Fraction(0)))   # a in weight cone
    verts = enumerate_vertices(hs, s.rank)
    poly = Polytope(dim=s.rank, vertices=tuple(verts),
                    recession_rays=tuple(s.weight_cone.rays), halfspaces=tuple(hs))
    return NewtonPolyhedron(polytope=poly)


def value_under(F: MonomialFiltration, xi) -> Fraction:
    """Value of the filtration under the toric valuation of xi.

    Equals the minimum of <xi, .> over the Newton polyhedron; recession
    directions pair positively with xi so the minimum sits at a vertex.
    """
    if isinstance(xi, ReebVector):
        xi = xi.xi
    xi = vec(xi)
    verts = newton_polyhedron(F).vertices
    return min(dot(xi, v) for v in verts)


def saturate(F: MonomialFiltration):
    """Saturation; monomial filtrations in reduced form are already saturated.

    Returns (filtration, already_saturated).  The gauge of the Newton
    polyhedron reproduces the reduced transform on the weight cone, so the
    filtration is returned unchanged with the flag set.
    """
    return F, True


def ord_of(F: MonomialFiltration, alpha) -> Fraction:
    """Exact order of the monomial with exponent alpha: g(alpha)."""
    alpha = vec(alpha)
    if not F.ambient.weight_cone.contains(alpha):
        raise OutsideWeightCone(f"{alpha} is not in the weight cone")
    return F.ord(alpha)


def _cone_partners(F: MonomialFiltration, alpha, budget=None):
    """Lattice points gamma in the weight cone with alpha - gamma also in it."""
    s = F.ambient
    ell = _reference_level(s)
    w = dot(ell, alpha)
    pts = lattice_points_below(s.weight_cone, ell, w, budget=budget, strict=False)
    keep = []
    for gamma in pts:
        rest = tuple(a - b for a, b in zip(alpha, gamma))
        if s.weight_cone.contains(rest):
            keep.append(gamma)
    return keep, ell


def approx_ord(F: MonomialFiltration, m: int, alpha, budget=None) -> int:
    """Order of the monomial under the degree-m approximating filtration.

    The value is the best decomposition of alpha into nonzero lattice
    blocks, each worth min(floor(g(block)), m); computed by dynamic
    programming over blocks sorted by reference weight.  Bounded above by
    floor(g(alpha)), with equality whenever g(alpha) <= m.
    """
    if m < 1:
        raise EmptyInput("approximation level must be >= 1")
    alpha = vec(alpha)
    if not F.ambient.weight_cone.contains(alpha):
        raise OutsideWeightCone(f"{alpha} is not in the weight cone")
    pts, ell = _cone_partners(F, alpha, budget=budget)
    pts.sort(key=lambda p: (dot(ell, p), p))
    index = {p: i for i, p in enumerate(pts)}
    wc = F.ambient.weight_cone
    best = {}
    for p in pts:
        if all(x == 0 for x in p):
            best[p] = 0
            continue
        value = min(floor(F.ord(p)), m)  # single block
        for q in pts:
            if q == p or all(x == 0 for x in q):
                continue
            if dot(ell, q) > dot(ell, p):
                break
            rest = tuple(a - b for a, b in zip(p, q))
            if rest in best:
                cand = min(floor(F.ord(q)), m) + best[rest]
                if cand > value:
                    value = cand
        best[p] = value
    return best[tuple(alpha)]


def approximant(F: MonomialFiltration, m: int, budget=None) -> MonomialFiltration:
    """Saturated closure of the degree-m approximating filtration.

    The approximating filtration is generated in degrees <= m; its concave
    transform is the homogeneous concave envelope of the block values
    v(gamma) = min(floor(g(gamma)), m) over lattice gamma.  The envelope is
    computed dually: it is the minimum over the vertices of
    Theta = {theta in sigma : <theta, gamma> >= v(gamma) for all gamma},
    and a window of gammas suffices once every vertex theta satisfies
    <theta, .> >= m outside the window, which is certified on the rays.
    """
    if m < 1:
        raise EmptyInput("approximation level must be >= 1")
    s = F.ambient
    ell = _reference_level(s)
    n = s.rank
    window = 2 * m * max(1, max(dot(ell, r) for r in s.weight_cone.rays))
    for _ in range(24):
        pts = lattice_points_below(s.weight_cone, ell, window,
                                   budget=budget, strict=False)
        cons = []
        for gamma in pts:
            v = min(floor(F.ord(gamma)), m)
            if v >= 1:
                cons.append((gamma, v))
        # Drop constraints implied by a stronger one deeper in the cone:
        # (gamma, v) follows from (gamma', v') when v' >= v and
        # gamma - gamma' stays in the weight cone.
        cons.sort(key=lambda cv: (-cv[1], dot(ell, cv[0]), cv[0]))
        kept = []
        for gamma, v in cons:
            dominated = False
            for gamma2, v2 in kept:
                diff = tuple(a - b for a, b in zip(gamma, gamma2))
                if v2 >= v and s.weight_cone.contains(diff):
                    dominated = True
                    break
            if not dominated:
                kept.append((gamma, v))
        hs = []
        for gamma, v in kept:
            hs.append((tuple(-frac(x) for x in gamma), frac(-v)))
        for r in s.weight_cone.rays:
            hs.append((tuple(-frac(x) for x in r), Fraction(0)))
        thetas = enumerate_vertices(hs, n)
        ok = bool(kept)
        for theta in thetas:
            c = min(dot(theta, r) / dot(ell, r) for r in s.weight_cone.rays)
            if c * window < m:
                ok = False
                break
        if ok:
            return monomial_filtration(s, thetas)
        window *= 2
    raise BudgetExceeded("approximant window kept growing; raise the budget")
