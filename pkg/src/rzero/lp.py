"""Tiny exact linear programming by basic-point enumeration.

The polytopes in this package live in at most a handful of dimensions, so a
vertex of the feasible region can be found by enumerating active constraint
sets and solving the resulting square systems over the rationals.  This is
exponential in general and entirely adequate here; exactness is the point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

FracVector = list[Fraction]
FracMatrix = list[list[Fraction]]


def _frac_rows(rows) -> FracMatrix:
    return [[Fraction(x) for x in row] for row in rows]


def _solve_square(a: FracMatrix, b: FracVector) -> FracVector | None:
    """Unique solution of a (possibly overdetermined) consistent system.

    Returns None if the system is inconsistent or underdetermined.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    aug = [row[:] + [bv] for row, bv in zip(a, b)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        scale = aug[r][c]
        aug[r] = [x / scale for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None
    if len(pivots) < ncols:
        return None
    x = [Fraction(0)] * ncols
    for row_idx, c in enumerate(pivots):
        x[c] = aug[row_idx][ncols]
    return x


def _rank(rows: FracMatrix) -> int:
    work = [row[:] for row in rows]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for i in range(rank + 1, nrows):
            if work[i][c] != 0:
                f = work[i][c] / work[rank][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def lp_minimize(objective,
                a_ub, b_ub,
                a_eq, b_eq) -> tuple[Fraction, FracVector] | None:
    """Exact minimum of objective . x over {a_ub x <= b_ub, a_eq x = b_eq}.

    Assumes the minimum, if the region is nonempty, is attained at a vertex
    (true for the pointed polytopes used in this package).  Returns the
    optimal (value, point) or None when no feasible vertex exists.
    """
    objective = [Fraction(x) for x in objective]
    dim = len(objective)
    a_ub = _frac_rows(a_ub)
    b_ub = [Fraction(x) for x in b_ub]
    a_eq = _frac_rows(a_eq)
    b_eq = [Fraction(x) for x in b_eq]

    eq_rank = _rank(a_eq) if a_eq else 0
    need = dim - eq_rank
    if need < 0:
        need = 0

    best: tuple[Fraction, FracVector] | None = None
    indices = range(len(a_ub))
    for active in combinations(indices, need):
        rows = a_eq + [a_ub[i] for i in active]
        rhs = b_eq + [b_ub[i] for i in active]
        x = _solve_square(rows, rhs)
        if x is None:
            continue
        feasible = all(
            sum(c * xv for c, xv in zip(row, x)) <= bound
            for row, bound in zip(a_ub, b_ub)
        )
        if not feasible:
            continue
        value = sum(c * xv for c, xv in zip(objective, x))
        if best is None or value < best[0]:
            best = (value, x)
    return best


def lp_feasible_point(a_ub, b_ub, a_eq, b_eq) -> FracVector | None:
    """Some vertex of the region, or None when it has none / is empty."""
    dim = len(a_eq[0]) if a_eq else (len(a_ub[0]) if a_ub else 0)
    result = lp_minimize([Fraction(0)] * dim, a_ub, b_ub, a_eq, b_eq)
    return None if result is None else result[1]
