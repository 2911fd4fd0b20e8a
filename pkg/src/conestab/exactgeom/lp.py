"""Exact rational simplex solver.

Two-phase dense tableau simplex over ``Fraction`` with Bland's rule, so the
solver is deterministic and cannot cycle.  Variables are free by default and
are split into positive and negative parts internally.  Infeasibility and
unboundedness are reported as distinct exceptions carrying certificates:
a Farkas combination of the rows, or an improving recession ray.
"""

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DenominatorVanishes, Infeasible, LPUnbounded
from .linalg import dot, frac, vec

LE, GE, EQ = "<=", ">=", "=="


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    point: tuple


def lp_solve(objective, constraints, sense="min") -> LPResult:
    """Optimize a linear objective over {x : constraints}.

    objective:   covector c (the objective is <c, x>)
    constraints: iterable of (covector a, relation, rhs b) with relation one
                 of '<=', '>=', '=='
    sense:       'min' or 'max'

    Returns one optimal vertex.  Raises Infeasible or LPUnbounded, each with
    a certificate.
    """
    c = list(vec(objective))
    n = len(c)
    if sense == "max":
        c = [-x for x in c]
    elif sense != "min":
        raise ValueError("sense must be 'min' or 'max'")

    # Normalize to <=-form rows for the Farkas certificate bookkeeping, then
    # to equalities with slacks on x split into x+ - x-.
    rows_le = []  # (a, b, origin index, sign) in <= form
    for idx, (a, rel, b) in enumerate(constraints):
        a = list(vec(a))
        b = frac(b)
        if rel == LE:
            rows_le.append((a, b, idx, 1))
        elif rel == GE:
            rows_le.append(([-x for x in a], -b, idx, -1))
        elif rel == EQ:
            rows_le.append((a, b, idx, 1))
            rows_le.append(([-x for x in a], -b, idx, -1))
        else:
            raise ValueError(f"unknown relation {rel!r}")

    m = len(rows_le)
    nv = 2 * n  # split variables
    ns = m      # one slack per <= row
    # Equality system: for each row: a.(x+ - x-) + s = b, s >= 0.
    A = []
    b_col = []
    for a, b, _, _ in rows_le:
        row = [x for x in a] + [-x for x in a] + [Fraction(0)] * ns
        A.append(row)
        b_col.append(b)
    for i in range(m):
        A[i][nv + i] = Fraction(1)

    cost = [x for x in c] + [-x for x in c] + [Fraction(0)] * ns

    value, x_full, farkas = _two_phase(A, b_col, cost, nv + ns, rows_le, n)
    x = tuple(x_full[j] - x_full[n + j] for j in range(n))
    if sense == "max":
        value = -value
    return LPResult(value=value, point=x)


def _two_phase(A, b, cost, ncols, rows_le, n_orig):
    m = len(A)
    # Make rhs nonnegative.
    A = [row[:] for row in A]
    b = b[:]
    flipped = [False] * m
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
            flipped[i] = True

    # Phase 1: artificial variables, minimize their sum.
    total = ncols + m
    T = []
    for i in range(m):
        row = A[i] + [Fraction(0)] * m + [b[i]]
        row[ncols + i] = Fraction(1)
        T.append(row)
    basis = [ncols + i for i in range(m)]
    phase_cost = [Fraction(0)] * ncols + [Fraction(1)] * m + [Fraction(0)]
    z = _reduced_cost_row(T, basis, phase_cost, total)
    _simplex_loop(T, basis, z, total)
    if -z[total] != 0:
        farkas = _farkas_from_phase1(z, rows_le, flipped, ncols)
        raise Infeasible("feasible region is empty", farkas=farkas)

    # Drive remaining artificials out of the basis where possible.
    for i in range(m):
        if basis[i] >= ncols:
            piv = next((j for j in range(ncols) if T[i][j] != 0), None)
            if piv is None:
                continue  # redundant row
            _pivot(T, basis, i, piv, total)

    # Phase 2 on the original cost.
    full_cost = list(cost) + [Fraction(0)] * m + [Fraction(0)]
    z = _reduced_cost_row(T, basis, full_cost, total)
    try:
        _simplex_loop(T, basis, z, total, forbid=set(range(ncols, ncols + m)))
    except LPUnbounded as exc:
        col = exc.ray  # improving column index stashed by the loop
        ray = _ray_from_column(T, basis, col, ncols, n_orig)
        raise LPUnbounded("objective unbounded on feasible region", ray=ray) from None
    x = [Fraction(0)] * total
    for i, bv in enumerate(basis):
        x[bv] = T[i][total]
    return -z[total], x[:ncols], None


def _reduced_cost_row(T, basis, cost, total):
    z = list(cost)
    for i, bv in enumerate(basis):
        coef = z[bv]
        if coef != 0:
            for j in range(total + 1):
                z[j] -= coef * T[i][j]
    return z


def _simplex_loop(T, basis, z, total, forbid=frozenset()):
    m = len(T)
    while True:
        # Bland: entering variable is the smallest index with negative cost.
        enter = next((j for j in range(total) if j not in forbid and z[j] < 0), None)
        if enter is None:
            return
        # Ratio test; Bland again on ties via smallest basis variable.
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][total] / T[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            exc = LPUnbounded("unbounded")
            exc.ray = enter
            raise exc
        _pivot(T, basis, best[1], enter, total)
        coef = z[enter]
        if coef != 0:
            for j in range(total + 1):
                z[j] -= coef * T[best[1]][j]


def _pivot(T, basis, row, col, total):
    pv = T[row][col]
    T[row] = [x / pv for x in T[row]]
    for i in range(len(T)):
        if i != row and T[i][col] != 0:
            f = T[i][col]
            T[i] = [a - f * b for a, b in zip(T[i], T[row])]
    basis[row] = col


def _farkas_from_phase1(z, rows_le, flipped, ncols):
    """Multipliers y >= 0 on the <=-form rows with y.A = 0 and y.b < 0.

    Phase-1 duals are read off the reduced-cost row: the artificial column
    of row i has reduced cost z[art_i] = 1 - yhat_i, and the <=-form
    multiplier is y_i = -yhat_i * s_i with s_i = -1 for rows whose rhs was
    negated.  Free-variable splitting forces y.A = 0 exactly.
    """
    m = len(rows_le)
    y = []
    for i in range(m):
        yhat = Fraction(1) - z[ncols + i]
        s = Fraction(-1) if flipped[i] else Fraction(1)
        y.append(-yhat * s)
    return tuple(y)


def _ray_from_column(T, basis, col, ncols, n_orig):
    """Recession direction in original variables for an unbounded column."""
    d = [Fraction(0)] * ncols
    if col < ncols:
        d[col] = Fraction(1)
    for i, bv in enumerate(basis):
        if bv < ncols:
            d[bv] = -T[i][col]
    return tuple(d[j] - d[n_orig + j] for j in range(n_orig))


def lp_max_over_vertices(objective, vertices):
    """Max of a linear form over an explicit vertex list (oracle helper)."""
    objective = vec(objective)
    best = None
    arg = None
    for v in vertices:
        val = dot(objective, v)
        if best is None or val > best:
            best, arg = val, v
    return best, arg


def fractional_lp(num, den, halfspaces, sense="min", normalization=Fraction(1)):
    """Optimize <num,x>/<den,x> over the cone {x : <h,x> >= 0 for h in halfspaces}.

    Uses the Charnes-Cooper substitution y = x / <den,x>: the program becomes
    linear in y with <den,y> = 1.  The denominator must be positive on the
    cone minus the origin; a vanishing denominator direction surfaces as an
    unbounded or degenerate transformed program.
    """
    num = vec(num)
    den = vec(den)
    n = len(num)
    from .cone import cone_from_halfspaces
    feasible = cone_from_halfspaces(halfspaces)
    for r in feasible.rays:
        if dot(den, r) <= 0:
            raise DenominatorVanishes(
                f"denominator not strictly positive on feasible ray {r}")
    cons = [(den, EQ, normalization)]
    for h in halfspaces:
        cons.append((vec(h), GE, Fraction(0)))
    try:
        res = lp_solve(num, cons, sense=sense)
    except LPUnbounded as exc:
        raise DenominatorVanishes(
            "denominator not strictly positive on the feasible cone") from exc
    y = res.point
    d = dot(den, y)
    if d <= 0:
        raise DenominatorVanishes("denominator vanishes at the optimum")
    return res.value / normalization, y
