"""Critical values and the decreasing family of superlevel subcomplexes.

After subdivision every per-simplex minimum of |f| is a vertex norm, so the
critical values are just the distinct positive vertex norms.  The family
A_r = {x : |f(x)| >= r} is constant in r between consecutive critical values;
each constancy interval (s_i, s_{i+1}] is sampled at its right endpoint.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .complexes import PLMap, Subcomplex, full_subcomplex, vertex_minima_ok
from .errors import InputError
from .exact import ExactRadius

radius_sort_key = functools.cmp_to_key(lambda a, b: a.cmp(b))


@dataclass(frozen=True)
class CriticalSet:
    """Strictly increasing positive critical values of |f|."""

    values: tuple[ExactRadius, ...]
    has_zero_min: bool

    def __post_init__(self):
        for i, v in enumerate(self.values):
            if v.sign() <= 0:
                raise InputError("critical values must be positive")
            if i and self.values[i - 1].cmp(v) >= 0:
                raise InputError("critical values must be strictly increasing")


def critical_values(f: PLMap) -> CriticalSet:
    """Sorted distinct positive vertex norms of a post-subdivision map."""
    if not f.minima_at_vertices and not vertex_minima_ok(f):
        raise InputError("critical_values requires a subdivided map")
    norms = {f.norm_at(v) for v in f.complex.vertices}
    has_zero = any(r.sign() == 0 for r in norms)
    positive = sorted((r for r in norms if r.sign() > 0), key=radius_sort_key)
    return CriticalSet(tuple(positive), has_zero)


def sample_radii(criticals: CriticalSet) -> list[ExactRadius]:
    """One sample radius per constancy interval of the superlevel family.

    The module is constant on (s_i, s_{i+1}], so the right endpoint s_{i+1}
    represents it; the final sample only needs to exceed the largest critical
    value, and any rational above it serves.
    """
    values = criticals.values
    if not values:
        return [ExactRadius.of(1)]
    samples = list(values)
    samples.append(ExactRadius.of(values[-1].rational_above()))
    return samples


@dataclass(frozen=True)
class Filtration:
    """Superlevel subcomplexes of a subdivided map at the sample radii."""

    f: PLMap
    criticals: CriticalSet
    samples: tuple[ExactRadius, ...]
    levels: tuple[Subcomplex, ...]

    def level_count(self) -> int:
        return len(self.samples)


def build_filtration(f: PLMap) -> Filtration:
    """Compute all superlevel subcomplexes A'_r at the sample radii."""
    crit = critical_values(f)
    samples = sample_radii(crit)
    norms = {v: f.norm_at(v) for v in f.complex.vertices}
    levels = []
    for r in samples:
        levels.append(full_subcomplex(f.complex, lambda v: norms[v].cmp(r) >= 0))
    for small, large in zip(levels[1:], levels):
        for s in small.simplices:
            if s not in large:
                raise InputError("superlevel subcomplexes failed to nest")
    return Filtration(f, crit, tuple(samples), tuple(levels))


def level_at_radius(f: PLMap, r: ExactRadius | Fraction) -> Subcomplex:
    """The superlevel subcomplex at an arbitrary exact radius."""
    if not isinstance(r, ExactRadius):
        r = ExactRadius.of(r)
    return full_subcomplex(f.complex, lambda v: f.norm_at(v).cmp(r) >= 0)
