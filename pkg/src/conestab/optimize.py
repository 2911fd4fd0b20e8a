"""Optimization engines: fractional LP, cutting planes, volume minimization.

The normalized-volume minimizer works on the affine slice where the log
discrepancy equals one.  The slice volume is a convex function of the Reeb
vector (it is an integral of exponentials of linear forms over the weight
cone), its gradient and Hessian have exact closed forms in the slice
barycenter and second moments, so the search runs damped Newton steps in
floating point, rounds each iterate back to small rationals, and verifies
descent exactly.  A final linear-programming bound certifies the gap, which
collapses to zero whenever the rounded iterate is exactly stationary.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateReebCone, ToleranceNotReached
from .exactgeom import barycenter, dot, frac, second_moment, slice_polytope, vec, volume
from .exactgeom.lp import fractional_lp, lp_solve
from .invariants import okounkov_body, vol
from .singularity import ConeSingularity, log_discrepancy


@dataclass(frozen=True)
class KelleyResult:
    upper: Fraction
    lower: Fraction
    arg: tuple
    iterations: int

    @property
    def gap(self) -> Fraction:
        return self.upper - self.lower


def kelley_minimize(oracle, halfspaces, dim, tol, max_iter=200,
                    start=None) -> KelleyResult:
    """Cutting-plane minimization of a convex function over a bounded
    H-polytope {x : <a, x> <= b}.

    ``oracle(x)`` must return (value, subgradient) exactly (Fractions); the
    model lower bound and the incumbent upper bound bracket the optimum and
    the loop stops when they close to within tol.  Deterministic given a
    deterministic oracle.
    """
    tol = frac(tol)
    halfspaces = [(vec(a), frac(b)) for a, b in halfspaces]
    if start is None:
        from .exactgeom import enumerate_vertices
        verts = enumerate_vertices(halfspaces, dim)
        if not verts:
            raise DegenerateReebCone("empty cutting-plane feasible region")
        start = tuple(sum(v[i] for v in verts) / len(verts) for i in range(dim))
    x = vec(start)
    cuts = []
    best_val = None
    best_arg = None
    lower = None
    for it in range(1, max_iter + 1):
        val, sub = oracle(x)
        if best_val is None or val < best_val:
            best_val, best_arg = val, x
        cuts.append((val, vec(sub), x))
        # Model LP: minimize t subject to t >= val_i + <g_i, y - x_i>, y feasible.
        cons = []
        for v, g, xi in cuts:
            row = tuple(-a for a in g) + (Fraction(1),)
            cons.append((row, ">=", v - dot(g, xi)))
        for a, b in halfspaces:
            cons.append((tuple(a) + (Fraction(0),), "<=", b))
        res = lp_solve((Fraction(0),) * dim + (Fraction(1),), cons, sense="min")
        lower = res.value
        if best_val - lower <= tol:
            return KelleyResult(upper=best_val, lower=lower, arg=best_arg,
                                iterations=it)
        x = res.point[:dim]
    raise ToleranceNotReached(
        f"cutting planes stopped at gap {best_val - lower}",
        result=KelleyResult(upper=best_val, lower=lower, arg=best_arg,
                            iterations=max_iter))


@dataclass(frozen=True)
class NvolResult:
    minimizer: tuple          # rational Reeb vector on the A = 1 slice
    nvol_value: Fraction      # exact normalized volume at the minimizer
    certificate_gap: Fraction  # exact upper bound on nvol - inf nvol
    alignment_residual: tuple  # alpha0(minimizer) - u; zero iff stationary
    iterations: int


def _round_to_slice(s, x_float, max_den):
    """Continued-fraction rounding, then exact renormalization to A = 1."""
    cand = [Fraction(float(v)).limit_denominator(max_den) for v in x_float]
    a = dot(s.u, cand)
    if a <= 0:
        return None
    return tuple(c / a for c in cand)


def _slice_tangent_basis(s):
    from .exactgeom.linalg import nullspace
    return nullspace([s.u], s.rank)


def minimize_nvol(s: ConeSingularity, tol=Fraction(1, 10 ** 9),
                  max_iter=80, raise_on_gap=False) -> NvolResult:
    """Minimize the normalized volume over the Reeb cone.

    Works on {A = 1}: there nvol equals vol, the gradient is the exact
    barycenter form and the Hessian the exact second moment of the unit
    slice.  Steps: float Newton direction, rational rounding (denominators
    capped), exact descent check.  The certificate is the convexity bound
    vol(x*) + <grad, y - x*> minimized over the slice polytope by one LP;
    at an exactly stationary rounded point it is exactly zero.
    """
    tol = frac(tol)
    n = s.rank
    wc = s.weight_cone

    def f_grad_hess(xi):
        body = slice_polytope(wc, xi, 1)
        V = volume(body)
        b = barycenter(body)
        grad = tuple(-math.factorial(n + 1) * V * x for x in b)
        H = second_moment(body)
        hess = tuple(tuple(math.factorial(n + 2) * x for x in row) for row in H)
        return math.factorial(n) * V, grad, hess

    # Interior start on the slice.
    xi = s.sigma.interior_point()
    xi = tuple(frac(x) / dot(s.u, xi) for x in xi)
    fx, grad, hess = f_grad_hess(xi)
    tangent = _slice_tangent_basis(s)
    T = np.array([[float(x) for x in t] for t in tangent]).T  # n x (n-1)

    iterations = 0
    for it in range(max_iter):
        iterations = it + 1
        g = np.array([float(x) for x in grad])
        H = np.array([[float(x) for x in row] for row in hess])
        Ht = T.T @ H @ T
        gt = T.T @ g
        try:
            d = np.linalg.solve(Ht, -gt)
        except np.linalg.LinAlgError:
            d = -gt
        step_dir = T @ d
        moved = False
        for k in range(40):
            scale = 0.5 ** k
            cand_f = np.array([float(x) for x in xi]) + scale * step_dir
            for max_den in (10 ** 6, 10 ** 4, 100, 10):
                cand = _round_to_slice(s, cand_f, max_den)
                if cand is None or not s.sigma.contains(cand, strict=True):
                    continue
                if cand == xi:
                    continue
                body = slice_polytope(wc, cand, 1)
                fc = math.factorial(n) * volume(body)
                if fc < fx:
                    xi = cand
                    fx, grad, hess = f_grad_hess(xi)
                    moved = True
                    break
            if moved:
                break
        if not moved:
            break

    # Prefer the simplest rational point near the iterate that does not
    # increase the value; exact minimizers of small height are recovered.
    for max_den in (1, 2, 3, 4, 6, 10, 100, 10 ** 4):
        cand = _round_to_slice(s, [float(x) for x in xi], max_den)
        if cand is None or not s.sigma.contains(cand, strict=True):
            continue
        fc = math.factorial(n) * volume(slice_polytope(wc, cand, 1))
        if fc <= fx:
            xi, fx = cand, fc
            _, grad, hess = f_grad_hess(xi)
            break

    # Certificate: convexity lower bound minimized over the slice polytope.
    cons = [(h, ">=", Fraction(0)) for h in s.sigma.halfspaces]
    cons.append((s.u, "==", Fraction(1)))
    res = lp_solve(grad, cons, sense="min")
    gap = dot(grad, xi) - res.value
    alpha0 = okounkov_body(s, xi).alpha0
    residual = tuple(a - u for a, u in zip(alpha0, s.u))
    result = NvolResult(minimizer=xi, nvol_value=fx, certificate_gap=gap,
                        alignment_residual=residual, iterations=iterations)
    if raise_on_gap and gap > tol:
        raise ToleranceNotReached(f"certificate gap {gap} above {tol}",
                                  result=result)
    return result


__all__ = [
    "KelleyResult",
    "NvolResult",
    "fractional_lp",
    "kelley_minimize",
    "minimize_nvol",
]
