"""conestab: exact stability invariants of toric cone singularities.

The calculus runs entirely in rational arithmetic: cones and polytopes with
exact volumes and barycenters, an exact simplex solver, monomial
filtrations with their Newton polyhedra, the scalar invariants (S, extremal
slopes, lct, Ding, Futaki, delta, J-norms), normalized-volume minimization
with optimality certificates, and finite-level lattice estimators with
convergence diagnostics.
"""

from .errors import ConestabError
from .estimators import (
    EstimatorSweep,
    SemigroupSample,
    bj_bound_check,
    gamma_semigroup,
    good_valuation_check,
    sweep,
    sweep_approx,
)
from .exactgeom import (
    Cone,
    PLConcave,
    Polytope,
    barycenter,
    cone_from_rays,
    dual_cone,
    integrate_pl,
    lattice_points_below,
    lp_solve,
    slice_polytope,
    volume,
)
from .filtration import (
    MonomialFiltration,
    NewtonPolyhedron,
    approx_ord,
    approximant,
    geodesic,
    intersect,
    monomial_filtration,
    newton_polyhedron,
    ord_of,
    rescale,
    saturate,
    toric_filtration,
    twist,
    value_under,
)
from .invariants import (
    InvariantReport,
    OkounkovBody,
    delta_T,
    delta_red_objective,
    ding,
    futaki_derivative,
    futaki_product,
    inf_twist_s,
    j_norm,
    lambda_max_closed,
    lambda_min_closed,
    lct_monomial,
    nvol,
    okounkov_body,
    reduced_j,
    s_closed,
    semistable_verdict,
    vol,
)
from .optimize import NvolResult, fractional_lp, kelley_minimize, minimize_nvol
from .singularity import (
    ConeSingularity,
    ReebVector,
    from_rays,
    log_discrepancy,
    reeb_contains,
    reeb_vector,
)

__version__ = "0.1.0"
