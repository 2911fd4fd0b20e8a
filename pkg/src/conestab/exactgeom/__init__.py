"""Exact rational convex geometry: cones, polytopes, LP, lattice points."""

from .cone import Cone, cone_from_halfspaces, cone_from_rays, cone_triangulate, dual_cone
from .lattice import enumeration_budget, lattice_points_below
from .linalg import dot, frac, primitivize, vec
from .lp import LPResult, fractional_lp, lp_solve
from .polytope import (
    PLConcave,
    Polytope,
    barycenter,
    enumerate_vertices,
    integrate_pl,
    polytope_from_halfspaces,
    second_moment,
    slice_polytope,
    triangulate,
    volume,
)

__all__ = [
    "Cone",
    "LPResult",
    "PLConcave",
    "Polytope",
    "barycenter",
    "cone_from_halfspaces",
    "cone_from_rays",
    "cone_triangulate",
    "dot",
    "dual_cone",
    "enumerate_vertices",
    "enumeration_budget",
    "frac",
    "fractional_lp",
    "integrate_pl",
    "lattice_points_below",
    "lp_solve",
    "polytope_from_halfspaces",
    "primitivize",
    "second_moment",
    "slice_polytope",
    "triangulate",
    "vec",
    "volume",
]
