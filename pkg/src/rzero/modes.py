"""The distinguished classes of a map in each supported regime.

Three regimes reduce the obstruction data of f on a superlevel complex to
computable cohomology:

* signs (n = 1): the class of f on A is the assignment of a sign to each
  connected component; it extends over the ambient complex iff no ambient
  component sees both signs.
* circle (n = 2): classes of maps A -> nonzero plane are classified by a
  winding 1-cocycle, computed by counting signed crossings of edge-image
  segments with a generic ray from the origin.
* hopf (m <= n): the relative class of f on (X, A) lives in H^n(X, A; Z) and
  is realized by a piecewise-linear degree cocycle at a generic small probe
  point; extendability over X is obstructed exactly when the class is
  nonzero, and the ambient group of interest is ker(H^n(X,A) -> H^n(X)).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .complexes import (
    PLMap,
    Subcomplex,
    component_index,
    connected_components,
)
from .errors import InternalError, ModeError
from .exact import ExactRadius
from .linalg import field_kernel, field_solve
from .normmin import vector_norm
from .rng import RationalSampler

RETRY_BUDGET = 32


class Mode(str, enum.Enum):
    SIGNS = "signs"
    CIRCLE = "circle"
    HOPF = "hopf"

    def __str__(self):  # pragma: no cover - cosmetic
        return self.value


def applicable(mode: Mode, n: int, m: int) -> bool:
    if mode == Mode.SIGNS:
        return n == 1
    if mode == Mode.CIRCLE:
        return n == 2
    return m <= n


def require_applicable(mode: Mode, n: int, m: int) -> None:
    if not applicable(mode, n, m):
        raise ModeError(
            f"mode {mode.value} does not apply to n={n}, dim X={m}; "
            "supported regimes: n=1 (signs), n=2 (circle), dim X <= n (hopf)"
        )


def auto_mode(n: int, m: int) -> Mode:
    """Deterministic mode selection: signs for n=1, then hopf when it
    applies with m <= 2, otherwise circle for n=2, otherwise hopf."""
    if n == 1:
        return Mode.SIGNS
    if n == 2:
        return Mode.HOPF if m <= 2 else Mode.CIRCLE
    if m <= n:
        return Mode.HOPF
    raise ModeError(
        f"no supported mode for n={n}, dim X={m}; "
        "supported regimes: n=1, n=2, or dim X <= n"
    )


def determinacy_flag(mode: Mode, n: int, m: int) -> bool:
    """Whether the computed class provably determines the robust zero-set
    family (low-dimensional regimes, or the stable range m <= 2n-3)."""
    if mode in (Mode.SIGNS, Mode.CIRCLE):
        return True
    return m <= 2 * n - 3


# ---------------------------------------------------------------------------
# signs mode (n = 1)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignVector:
    """One sign per connected component of a superlevel subcomplex."""

    components: tuple[tuple[str, ...], ...]
    signs: tuple[int, ...]


def sign_vector(f: PLMap, level: Subcomplex) -> SignVector:
    """The constant sign of f on each component of the level."""
    if f.n != 1:
        raise ModeError("sign vectors require a scalar map")
    comps = connected_components(level)
    signs = []
    for comp in comps:
        values = {1 if f.values[v][0] > 0 else -1 if f.values[v][0] < 0 else 0
                  for v in comp}
        if len(values) != 1 or 0 in values:
            raise InternalError(f"component {comp} does not carry a constant sign")
        signs.append(values.pop())
    return SignVector(tuple(comps), tuple(signs))


def signs_extendable(f: PLMap, level: Subcomplex, sv: SignVector) -> bool:
    """True iff the sign assignment extends over the ambient complex,
    i.e. no ambient component contains level components of both signs."""
    ambient = component_index(connected_components(f.complex))
    seen: dict[int, set[int]] = {}
    for comp, sign in zip(sv.components, sv.signs):
        root = ambient[comp[0]]
        seen.setdefault(root, set()).add(sign)
    return all(len(signs) < 2 for signs in seen.values())


# ---------------------------------------------------------------------------
# circle mode (n = 2): winding cocycles
# ---------------------------------------------------------------------------

class RayError(InternalError):
    """The chosen ray passes through a vertex value; resample."""


def _cross(a, b) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _dot(a, b) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def winding_cocycle(level: Subcomplex, f: PLMap, ray) -> dict:
    """Integer 1-cocycle on the level counting ray crossings of f.

    For an ordered edge (u, v) the value is the signed number of transversal
    crossings of the segment f(u) -> f(v) with the open ray R+ . ray; the
    cocycle class is f's winding class and does not depend on the admissible
    ray.  Raises RayError when a vertex value lies on the ray.
    """
    if f.n != 2:
        raise ModeError("winding cocycles require a planar map")
    ray = tuple(Fraction(x) for x in ray)
    if ray == (0, 0):
        raise ValueError("ray direction must be nonzero")
    crosses = {}
    for v in level.vertices:
        val = f.values[v]
        if val == (0, 0):
            raise InternalError("winding cocycle needs nonzero vertex values")
        c = _cross(ray, val)
        if c == 0 and _dot(ray, val) > 0:
            raise RayError(f"value of vertex {v} lies on the ray")
        crosses[v] = c
    cocycle = {}
    for u, v in level.edges():
        cu, cv = crosses[u], crosses[v]
        if cu == 0 or cv == 0 or (cu > 0) == (cv > 0):
            continue  # no transversal crossing of the ray's line
        t = cu / (cu - cv)
        point = tuple(f.values[u][i] + t * (f.values[v][i] - f.values[u][i])
                      for i in range(2))
        if _dot(ray, point) <= 0:
            continue  # crosses the opposite half-line
        cocycle[(u, v)] = 1 if cu < 0 else -1
    return cocycle


def admissible_ray(level: Subcomplex, f: PLMap, sampler: RationalSampler):
    """A seeded ray direction avoiding all vertex values of the level."""
    for _ in range(RETRY_BUDGET):
        ray = sampler.nonzero_vector(2)
        ok = True
        for v in level.vertices:
            val = f.values[v]
            if _cross(ray, val) == 0 and _dot(ray, val) > 0:
                ok = False
                break
        if ok:
            return ray
    raise InternalError("could not find an admissible ray")


# ---------------------------------------------------------------------------
# hopf mode (m <= n): degree cocycles
# ---------------------------------------------------------------------------

class ProbeError(InternalError):
    """The probe point is not a regular value; resample."""


def _affine_preimage(values, point):
    """Barycentric solution of sum l_j w_j = point, sum l_j = 1, or None.

    Returns (solution, unique); `unique` is False when the affine system is
    degenerate, in which case `solution` says whether any solution exists.
    """
    k = len(values)
    n = len(point)
    if n == 2 and k == 3:
        # Cramer on the 3x3 barycentric system (the common case).
        a, b, c = values
        det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])
        if det != 0:
            px, py = point[0] - a[0], point[1] - a[1]
            l1 = (px * (c[1] - a[1]) - (c[0] - a[0]) * py) / det
            l2 = ((b[0] - a[0]) * py - px * (b[1] - a[1])) / det
            return [1 - l1 - l2, l1, l2], True
    rows = []
    rhs = []
    for i in range(n):
        rows.append([Fraction(values[j][i]) for j in range(k)])
        rhs.append(Fraction(point[i]))
    rows.append([Fraction(1)] * k)
    rhs.append(Fraction(1))
    sol = field_solve(rows, rhs, 0)
    if sol is None:
        return None, True
    # Uniqueness: the homogeneous system must have trivial kernel.
    kern = field_kernel(rows, 0)
    return sol, not kern


def _ordered_det_sign(values) -> int:
    """Sign of det of the affine map's linear part in the sorted-vertex chart."""
    base = values[0]
    n = len(base)
    matrix = [[Fraction(values[j + 1][i] - base[i]) for j in range(n)]
              for i in range(n)]
    det = Fraction(1)
    m = [row[:] for row in matrix]
    sign = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        det *= m[c][c]
        for r in range(c + 1, n):
            fct = m[r][c] / m[c][c]
            m[r] = [x - fct * y for x, y in zip(m[r], m[c])]
    det *= sign
    return 1 if det > 0 else -1 if det < 0 else 0


def degree_cocycle(f: PLMap, probe) -> dict:
    """Relative n-cocycle of (X, A_r): the local degree of f at the probe.

    The value on an ordered n-simplex is the orientation sign of the affine
    map when the probe has a strictly interior preimage there, else 0.  For
    dim X < n the answer is the zero cochain.  Raises ProbeError when the
    probe fails regularity (a preimage on a proper face, or a degenerate
    simplex whose image contains the probe).
    """
    n = f.n
    if f.m > n:
        raise ModeError("degree cocycles require dim X <= n")
    probe = tuple(Fraction(x) for x in probe)
    cocycle = {}
    for simplex in f.complex.simplices_of_dim(n):
        values = [f.values[v] for v in simplex]
        sol, unique = _affine_preimage(values, probe)
        if not unique:
            if sol is not None:
                raise ProbeError(f"probe degenerate on simplex {simplex}")
            continue
        if sol is None:
            continue
        if any(x == 0 for x in sol):
            if all(x >= 0 for x in sol):
                raise ProbeError(f"probe hits a face of simplex {simplex}")
            continue
        if all(x > 0 for x in sol):
            sign = _ordered_det_sign(values)
            if sign == 0:
                raise ProbeError(f"degenerate simplex {simplex} covers the probe")
            cocycle[simplex] = sign
    return cocycle


def admissible_probe(f: PLMap, radius: ExactRadius, sampler: RationalSampler):
    """A seeded regular probe with |probe| < radius, with its cocycle."""
    bound = _rational_strictly_below(radius)
    for _ in range(RETRY_BUDGET):
        raw = sampler.nonzero_vector(f.n)
        probe = tuple(x * bound / f.n for x in raw)
        if vector_norm(probe, f.norm).cmp(radius) >= 0:
            continue
        try:
            return probe, degree_cocycle(f, probe)
        except ProbeError:
            continue
    raise InternalError("could not find an admissible probe")


def _rational_strictly_below(radius: ExactRadius) -> Fraction:
    value = radius.as_fraction()
    if value is not None:
        return value / 2
    q = radius.plus  # radius = sqrt(q), irrational
    scale = 1 << 8
    approx = Fraction(math.isqrt((q.numerator * scale * scale) // q.denominator), scale)
    if approx <= 0:
        approx = q / 2 if q < 4 else Fraction(1)
    while ExactRadius.of(approx).cmp(radius) >= 0:
        approx /= 2
    return approx
