"""Perturbation generation and end-to-end property checks.

Perturbations act on vertex values only: a simplexwise-affine difference
attains its max-norm over the complex at a vertex (the norm is convex), so
bounding every vertex offset bounds the function-space distance exactly.
Stability checks rerun the whole pipeline on the perturbed map, from
subdivision of the perturbed original complex onward, and compare barcodes
and robust radii with exact arithmetic; there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .barcode import barcode
from .cohomology import (
    CochainComplex,
    connecting_delta,
    field_cohomology,
    image_subgroup,
    induced_int_matrix,
    integral_cohomology,
    kernel_subgroup,
    restriction_transfer,
)
from .complexes import PLMap
from .errors import InputError
from .exact import ExactRadius
from .linalg import field_mat_mul, mat_mul, mat_vec, to_field_matrix
from .matching import bottleneck
from .modes import Mode
from .normmin import vector_norm
from .pipeline import Analysis, analyze, assemble_pointed_module
from .rng import RationalSampler, child_seed

DEFAULT_FIELD = {Mode.SIGNS: "f2", Mode.CIRCLE: "q", Mode.HOPF: "q"}


@dataclass(frozen=True)
class PerturbSpec:
    """A seeded per-vertex rational perturbation bounded by `delta`."""

    delta: Fraction
    seed: int
    denominator: int = 1 << 16

    def __post_init__(self):
        if self.delta < 0:
            raise InputError("perturbation bound must be nonnegative")


def perturb(f: PLMap, spec: PerturbSpec) -> PLMap:
    """A map g with ||g - f|| <= delta in the run's norm, exactly.

    Vertex offsets are uniform rationals scaled so that their norm is at
    most delta (for l1/l2 via the crude factor 1/n, which suffices); the
    bound is then verified exactly on every vertex.
    """
    sampler = RationalSampler(spec.seed, spec.denominator)
    scale = spec.delta if f.norm == "linf" else spec.delta / f.n
    bound = ExactRadius.of(spec.delta)
    new_values = {}
    for v in f.complex.vertices:  # vertices are totally ordered
        offset = sampler.vector(f.n)
        shifted = tuple(x + o * scale for x, o in zip(f.values[v], offset))
        gap = tuple(a - b for a, b in zip(shifted, f.values[v]))
        if vector_norm(gap, f.norm).cmp(bound) > 0:
            raise InputError("perturbation exceeded its bound")
        new_values[v] = shifted
    return f.with_values(new_values)


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)


@dataclass
class Report:
    seed: int
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "checks": [
                {"name": r.name, "passed": r.passed, "details": r.details}
                for r in self.results
            ],
        }


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------

def _pipeline_barcode(f: PLMap, mode: Mode, coefficients, seed: int):
    analysis = analyze(f, mode, seed)
    module = assemble_pointed_module(analysis, coefficients)
    robust = analysis.robust.radius
    return barcode(module, signs_robust_radius=robust), robust


def check_stability(f: PLMap, mode: Mode, delta: Fraction, trials: int,
                    seed: int, coefficients=None) -> Report:
    """Perturb `trials` times and verify the two stability inequalities:
    bottleneck(B_f, B_g) <= delta and |rho_f - rho_g| <= delta."""
    coefficients = coefficients or DEFAULT_FIELD[mode]
    delta = Fraction(delta)
    bound = ExactRadius.of(delta)
    base_bc, base_rho = _pipeline_barcode(f, mode, coefficients, child_seed(seed, 0))
    results = []
    failures = []
    for t in range(trials):
        trial_seed = child_seed(seed, t + 1)
        g = perturb(f, PerturbSpec(delta, trial_seed))
        try:
            g_bc, g_rho = _pipeline_barcode(g, mode, coefficients, trial_seed)
            dist = bottleneck(base_bc, g_bc)
            rho_gap = base_rho.gap(g_rho)
            checks = {
                "bottleneck_ok": dist.cmp(bound) <= 0,
                "radius_ok": rho_gap.cmp(bound) <= 0,
                "distinguished_ok": _distinguished_stable(base_bc, g_bc, bound),
            }
            if not all(checks.values()):
                failures.append({"trial": t, "seed": trial_seed, **checks})
        except Exception as exc:  # pipeline errors count as failures
            failures.append({"trial": t, "seed": trial_seed, "error": repr(exc)})
    results.append(CheckResult(
        f"stability(delta={delta}, trials={trials})",
        not failures,
        {"failures": failures},
    ))
    return Report(seed, results)


def _distinguished_stable(left, right, bound) -> bool:
    """Distinguished bars either match within the tolerance or are both
    short enough to be unmatched (closed thresholds, exact)."""
    from .matching import interval_cost

    doubled = bound.scale(2)
    a, b = left.distinguished, right.distinguished
    if a is not None and b is not None:
        if interval_cost(a, b).cmp(bound) <= 0:
            return True
        return (a.length().cmp(doubled) <= 0 and b.length().cmp(doubled) <= 0)
    lone = a if a is not None else b
    return lone is None or lone.length().cmp(doubled) <= 0


# ---------------------------------------------------------------------------
# invariances
# ---------------------------------------------------------------------------

ROTATE_90 = ((0, -1), (1, 0))
SCALES = (Fraction(2), Fraction(3), Fraction(7, 2))
RESAMPLES = 20


def _scale_map(f: PLMap, c: Fraction) -> PLMap:
    return f.with_values({v: tuple(c * x for x in val) for v, val in f.values.items()})


def _rotate_map(f: PLMap) -> PLMap:
    return f.with_values({
        v: (sum(Fraction(r) * x for r, x in zip(ROTATE_90[0], val)),
            sum(Fraction(r) * x for r, x in zip(ROTATE_90[1], val)))
        for v, val in f.values.items()
    })


def _negate_map(f: PLMap) -> PLMap:
    return f.with_values({v: tuple(-x for x in val) for v, val in f.values.items()})


def check_invariances(f: PLMap, mode: Mode, seed: int,
                      coefficients=None) -> Report:
    """Scaling, rotation, negation, functoriality, probe/ray independence
    and the signs/hopf cross-check, each with exact assertions."""
    coefficients = coefficients or DEFAULT_FIELD[mode]
    results = []
    base = analyze(f, mode, seed)
    base_mod = assemble_pointed_module(base, coefficients)
    base_bc = barcode(base_mod, signs_robust_radius=base.robust.radius)

    results.append(_check_functoriality(base, coefficients))

    # Scaling equivariance: criticals, robust radius and dims all scale.
    ok = True
    detail = {}
    for c in SCALES:
        scaled = analyze(_scale_map(f, c), mode, seed)
        want = [r.scale(c) for r in base.criticals]
        if list(scaled.criticals) != want:
            ok, detail = False, {"scale": str(c), "what": "criticals"}
            break
        if scaled.robust.radius != base.robust.radius.scale(c):
            ok, detail = False, {"scale": str(c), "what": "robust radius"}
            break
        smod = assemble_pointed_module(scaled, coefficients)
        if smod.dims != base_mod.dims:
            ok, detail = False, {"scale": str(c), "what": "dims"}
            break
    results.append(CheckResult("scaling equivariance", ok, detail))

    if f.n == 2:
        rotated = analyze(_rotate_map(f), mode, seed)
        rmod = assemble_pointed_module(rotated, coefficients)
        rbc = barcode(rmod, signs_robust_radius=rotated.robust.radius)
        ok = (rbc.multiset() == base_bc.multiset()
              and rotated.robust.radius == base.robust.radius
              and rmod.dims == base_mod.dims
              and (rbc.distinguished is None) == (base_bc.distinguished is None))
        results.append(CheckResult("rotation invariance", ok))

    if f.n == 1:
        negated = analyze(_negate_map(f), mode, seed)
        nmod = assemble_pointed_module(negated, coefficients)
        ok = (negated.robust.radius == base.robust.radius
              and nmod.dims == base_mod.dims)
        results.append(CheckResult("negation invariance", ok))

    if f.n == 1 and f.complex.dim <= 1:
        hopf = analyze(f, Mode.HOPF, seed)
        ok = hopf.robust.radius == base.robust.radius
        results.append(CheckResult("signs/hopf cross-check", ok))

    if mode in (Mode.CIRCLE, Mode.HOPF):
        ok = True
        for i in range(RESAMPLES):
            other = analyze(f, mode, child_seed(seed, 1000 + i))
            for lvl_a, lvl_b in zip(base.levels, other.levels):
                if mode == Mode.CIRCLE:
                    same = lvl_a.coh.group.classes_equal(
                        lvl_a.winding_coords, lvl_b.winding_coords)
                else:
                    same = lvl_a.rel.group.classes_equal(
                        lvl_a.degree_coords, lvl_b.degree_coords)
                if not same:
                    ok = False
        name = "ray independence" if mode == Mode.CIRCLE else "probe independence"
        results.append(CheckResult(name, ok, {"resamples": RESAMPLES}))

    return Report(seed, results)


def _check_functoriality(analysis: Analysis, coefficients) -> CheckResult:
    """Composites of consecutive transitions equal the direct maps.

    At the integral level equality holds as maps (columns agree modulo the
    target relations); after field reduction the canonical quotient
    coordinates make the matrix equality literal.
    """
    module = assemble_pointed_module(analysis, coefficients)
    char = module.char
    ok = True
    levels = analysis.levels
    for i in range(len(levels) - 2):
        direct = _direct_transition(analysis, i, i + 2)
        composed = mat_mul(analysis.transitions[i + 1], analysis.transitions[i])
        if not _matrices_equal_as_maps(analysis, i + 2, direct, composed):
            ok = False
        if char is not None and direct is not None:
            fm_direct = _field_reduce_transition(analysis, module, i, i + 2, direct)
            fm_comp = field_mat_mul(
                to_field_matrix(module.transitions[i + 1], char),
                to_field_matrix(module.transitions[i], char),
                char,
            )
            if fm_direct != fm_comp:
                ok = False
    return CheckResult("functoriality of transitions", ok)


def _field_reduce_transition(analysis, module, src, dst, int_matrix):
    """Field reduction of a direct integral transition matrix."""
    char = module.char
    if analysis.mode == Mode.SIGNS:
        return to_field_matrix(int_matrix, char)
    integral = assemble_pointed_module(analysis, "z")
    q_src = integral.presentations[src].tensor(char)
    q_dst = integral.presentations[dst].tensor(char)
    return q_src.induced_matrix(int_matrix, q_dst)


def _direct_transition(analysis: Analysis, src: int, dst: int):
    """The transition matrix from level src to level dst computed directly."""
    mode = analysis.mode
    levels = analysis.levels
    if mode == Mode.SIGNS:
        large, small = levels[src], levels[dst]
        big_index = {}
        for idx, comp in enumerate(large.signs.components):
            for v in comp:
                big_index[v] = idx
        matrix = []
        for comp in small.signs.components:
            row = [0] * len(large.signs.components)
            row[big_index[comp[0]]] = 1
            matrix.append(row)
        return matrix
    if mode == Mode.CIRCLE:
        a, b = levels[src], levels[dst]
        transfer = restriction_transfer(a.cc, b.cc, 1)
        return induced_int_matrix(a.coh, b.coh, transfer)
    a, b = levels[src], levels[dst]
    rest = induced_int_matrix(
        a.rel, b.rel, restriction_transfer(a.cc, b.cc, analysis.f.n)
    )
    cols = []
    for gen in a.kernel.span:
        col = b.kernel.member_coords(mat_vec(rest, gen))
        if col is None:
            return None
        cols.append(col)
    rows = len(b.kernel.span)
    return [[cols[j][r] for j in range(len(cols))] for r in range(rows)]


def _matrices_equal_as_maps(analysis: Analysis, dst: int, m1, m2) -> bool:
    """Column-wise equality of two integral matrices as maps into level dst
    (equality of classes, i.e. modulo the target relations)."""
    if m1 is None or m2 is None:
        return False
    if len(m1) != len(m2):
        return False
    mode = analysis.mode
    if mode == Mode.SIGNS:
        return m1 == m2
    level = analysis.levels[dst]
    group = level.coh.group if mode == Mode.CIRCLE else level.kernel.group
    cols = len(m1[0]) if m1 else 0
    if m1 and len(m2[0]) != cols:
        return False
    for j in range(cols):
        a = [m1[i][j] for i in range(len(m1))]
        b = [m2[i][j] for i in range(len(m2))]
        if not group.classes_equal(a, b):
            return False
    return True


# ---------------------------------------------------------------------------
# exactness regressions
# ---------------------------------------------------------------------------

def exactness_checks(f: PLMap, mode: Mode, seed: int) -> Report:
    """d^2 = 0, Im(delta) inside ker(j*) with equal rational ranks, and
    universal-coefficient consistency for F_2, F_3, F_5."""
    analysis = analyze(f, mode, seed)
    results = [
        _check_d_squared(analysis),
        _check_delta_kernel(analysis),
        _check_uct(analysis),
    ]
    return Report(seed, results)


def _all_cochain_complexes(analysis: Analysis):
    subdivided = analysis.f
    ccs = [CochainComplex(subdivided.complex)]
    for level in analysis.filtration.levels:
        ccs.append(CochainComplex(level))
        ccs.append(CochainComplex(subdivided.complex, level))
    return ccs


def _check_d_squared(analysis: Analysis) -> CheckResult:
    ok = True
    for cc in _all_cochain_complexes(analysis):
        for q in range(analysis.f.complex.dim + 1):
            prod = mat_mul(cc.coboundary(q + 1), cc.coboundary(q))
            if any(any(x != 0 for x in row) for row in prod):
                ok = False
    return CheckResult("d^2 = 0", ok)


def _check_delta_kernel(analysis: Analysis) -> CheckResult:
    """Im(delta) lands in ker(j*) and has the same rational rank."""
    n = analysis.f.n
    space = analysis.f.complex
    ambient_cc = CochainComplex(space)
    ambient_hn = integral_cohomology(ambient_cc, n)
    ok = True
    for level in analysis.filtration.levels:
        sub_cc = CochainComplex(level)
        rel_cc = CochainComplex(space, level)
        sub_h = integral_cohomology(sub_cc, n - 1)
        rel_h = integral_cohomology(rel_cc, n)
        jmat = induced_int_matrix(
            rel_h, ambient_hn, restriction_transfer(rel_cc, ambient_cc, n)
        )
        kernel = kernel_subgroup(jmat, rel_h, ambient_hn)
        image_vectors = []
        for g in range(sub_h.gens):
            rep = sub_h.represent([1 if i == g else 0 for i in range(sub_h.gens)])
            delta_cochain = connecting_delta(
                ambient_cc, sub_cc, rel_cc, sub_cc.cochain(rep, n - 1), n - 1
            )
            coords = rel_h.coords(rel_cc.vector(delta_cochain, n))
            if kernel.member_coords(coords) is None:
                ok = False
            image_vectors.append(coords)
        image = image_subgroup(image_vectors, rel_h)
        if image.free_rank != kernel.free_rank:
            ok = False
    return CheckResult("im(delta) = ker(j*) (rational ranks)", ok)


def _check_uct(analysis: Analysis) -> CheckResult:
    """Field dimensions match the prediction from integral cohomology."""
    ok = True
    for cc in _all_cochain_complexes(analysis):
        integral = {
            q: integral_cohomology(cc, q)
            for q in range(analysis.f.complex.dim + 2)
        }
        for q in range(analysis.f.complex.dim + 1):
            for p in (2, 3, 5):
                direct = field_cohomology(cc, q, p).dim
                here = integral[q]
                above = integral[q + 1]
                predicted = (here.free_rank
                             + sum(1 for d in here.torsion if d % p == 0)
                             + sum(1 for d in above.torsion if d % p == 0))
                if direct != predicted:
                    ok = False
            rational = field_cohomology(cc, q, 0).dim
            if rational != integral[q].free_rank:
                ok = False
    return CheckResult("universal coefficients", ok)
