"""Critical values, sample radii, superlevel filtrations."""

from fractions import Fraction

import pytest

from rzero.complexes import PLMap, star_subdivide, full_subcomplex
from rzero.errors import InputError
from rzero.exact import ExactRadius
from rzero.filtration import (
    CriticalSet,
    build_filtration,
    critical_values,
    level_at_radius,
    sample_radii,
)
from rzero.rng import RationalSampler

from inputs import edge_map, grid_identity_map, octagon_winding2_map


def test_critical_values_edge():
    f = star_subdivide(edge_map())
    crit = critical_values(f)
    assert [c.as_fraction() for c in crit.values] == [1]
    assert crit.has_zero_min


def test_critical_values_constant():
    c = edge_map().complex
    f = PLMap(c, {"p": (3, 4), "q": (3, 4)}, 2, "l2")
    crit = critical_values(star_subdivide(f))
    assert crit.values == (ExactRadius.of(5),)
    assert not crit.has_zero_min


def test_critical_values_grid():
    crit = critical_values(star_subdivide(grid_identity_map()))
    assert [c.as_fraction() for c in crit.values] == [1]
    assert crit.has_zero_min


def test_critical_values_requires_subdivision():
    with pytest.raises(InputError):
        critical_values(edge_map())  # interior minimum not at a vertex


def test_sample_radii():
    one = ExactRadius.of(1)
    half = ExactRadius.of(Fraction(1, 2))
    assert sample_radii(CriticalSet((one,), True)) == [one, ExactRadius.of(2)]
    assert sample_radii(CriticalSet((half, one), False)) == [half, one, ExactRadius.of(2)]
    assert sample_radii(CriticalSet((), False)) == [one]


def test_filtration_edge_levels():
    filt = build_filtration(star_subdivide(edge_map()))
    assert len(filt.levels) == 2
    assert set(filt.levels[0].vertices) == {"p", "q"}
    assert not filt.levels[0].edges()
    assert len(filt.levels[1].vertices) == 0


def test_filtration_grid_levels():
    filt = build_filtration(star_subdivide(grid_identity_map()))
    assert len(filt.levels) == 2
    assert len(filt.levels[0].vertices) == 8
    assert len(filt.levels[0].edges()) == 8
    assert len(filt.levels[1].vertices) == 0


def test_filtration_octagon_levels():
    filt = build_filtration(star_subdivide(octagon_winding2_map()))
    assert [c.as_fraction() for c in filt.criticals.values] == [Fraction(1, 2), 1]
    assert len(filt.levels) == 3
    assert len(filt.levels[0].vertices) == 16
    assert len(filt.levels[0].edges()) == 16
    assert len(filt.levels[1].vertices) == 8
    assert not filt.levels[1].edges()
    assert len(filt.levels[2].vertices) == 0


def test_nesting_and_tail():
    filt = build_filtration(star_subdivide(octagon_winding2_map()))
    for small, large in zip(filt.levels[1:], filt.levels):
        for s in small.simplices:
            assert s in large
    assert len(filt.levels[-1]) == 0


def test_representative_radii():
    # The level is constant on each interval between critical values.
    f = star_subdivide(octagon_winding2_map())
    filt = build_filtration(f)
    sampler = RationalSampler(4)
    boundaries = [Fraction(0)] + [c.as_fraction() for c in filt.criticals.values]
    for i, level in enumerate(filt.levels[:-1]):
        lo, hi = boundaries[i], boundaries[i + 1]
        for _ in range(8):
            t = Fraction(sampler.integer(1, 63), 64)
            r = lo + t * (hi - lo)
            if r <= lo:
                continue
            probe_level = level_at_radius(f, r)
            assert probe_level.simplices == level.simplices


def test_identically_zero_map():
    # No positive vertex norms: no critical values, a single empty level,
    # and (nothing is robust) radius zero in every applicable mode.
    from rzero.pipeline import analyze, Mode
    from inputs import edge_map

    f = edge_map()
    zero = f.with_values({v: (Fraction(0),) for v in f.complex.vertices})
    analysis = analyze(zero, Mode.SIGNS, 3)
    assert analysis.criticals == ()
    assert analysis.filtration.criticals.has_zero_min
    assert len(analysis.filtration.levels) == 1
    assert len(analysis.filtration.levels[0]) == 0
    assert analysis.robust.radius == ExactRadius.of(0)


def test_constant_planar_map():
    from rzero.pipeline import analyze, Mode
    from inputs import edge_map

    f = edge_map()
    const = PLMap(f.complex, {v: (Fraction(3), Fraction(4)) for v in f.complex.vertices}, 2, "l2")
    analysis = analyze(const, Mode.CIRCLE, 3)
    assert list(analysis.criticals) == [ExactRadius.of(5)]
    assert not analysis.filtration.criticals.has_zero_min
    assert analysis.robust.radius == ExactRadius.of(0)
