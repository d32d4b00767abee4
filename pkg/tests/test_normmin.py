"""Exact norm minimization over simplices."""

from fractions import Fraction

import pytest

from rzero.exact import ExactRadius
from rzero.normmin import simplex_norm_min, vector_norm, _min_lp
from rzero.rng import RationalSampler


def test_single_vertex():
    r = simplex_norm_min([(3, 4)], "l2")
    assert r.minimum == ExactRadius.of(5)
    assert r.barycentric == (1,)
    assert r.at_vertex


def test_edge_l2():
    r = simplex_norm_min([(1, 0), (0, 1)], "l2")
    assert r.minimum == ExactRadius.sqrt(Fraction(1, 2))
    assert r.barycentric == (Fraction(1, 2), Fraction(1, 2))
    assert not r.at_vertex


def test_edge_linf():
    r = simplex_norm_min([(1, 0), (0, 1)], "linf")
    assert r.minimum == ExactRadius.of(Fraction(1, 2))
    assert r.barycentric == (Fraction(1, 2), Fraction(1, 2))
    assert not r.at_vertex


def test_scalar_zero_crossing():
    for norm in ("l1", "l2", "linf"):
        r = simplex_norm_min([(-1,), (1,)], norm)
        assert r.minimum == ExactRadius.of(0)
        assert r.barycentric == (Fraction(1, 2), Fraction(1, 2))
        assert not r.at_vertex


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        simplex_norm_min([(1, 0), (1,)], "linf")


def test_triangle_interior_zero():
    # Image triangle surrounds the origin: minimum 0 strictly inside.
    vals = [(2, 0), (-1, 1), (-1, -1)]
    for norm in ("l1", "l2", "linf"):
        r = simplex_norm_min(vals, norm)
        assert r.minimum == ExactRadius.of(0)
        assert all(c > 0 for c in r.barycentric)
        assert not r.at_vertex


def test_closed_forms_match_lp():
    sampler = RationalSampler(3)
    for _ in range(150):
        k = sampler.integer(2, 3)
        n = sampler.integer(1, 3) if k == 2 else 2
        vals = [tuple(Fraction(sampler.integer(-40, 40), 8) for _ in range(n))
                for _ in range(k)]
        for norm in ("l1", "linf"):
            got = simplex_norm_min(vals, norm)
            ref_min, _ = _min_lp(vals, k, n, norm)
            assert got.minimum.cmp(ref_min) == 0


def test_minimum_is_global_lower_bound():
    # |f| >= minimum at many random interior points, and the reported
    # argmin attains it exactly.
    sampler = RationalSampler(17)
    cases = [
        ([(1, 0), (0, 1), (3, 3)], "l2"),
        ([(2, 1), (-1, 2), (1, -3)], "linf"),
        ([(1, 1, 0), (0, -2, 1)], "l1"),
        ([(-5,), (3,)], "l2"),
    ]
    for vals, norm in cases:
        k = len(vals)
        n = len(vals[0])
        result = simplex_norm_min(vals, norm)
        point = [sum(b * Fraction(v[i]) for b, v in zip(result.barycentric, vals))
                 for i in range(n)]
        assert vector_norm(point, norm).cmp(result.minimum) == 0
        assert sum(result.barycentric) == 1
        assert all(b >= 0 for b in result.barycentric)
        for _ in range(2500):
            weights = [Fraction(sampler.integer(0, 64), 64) for _ in range(k)]
            total = sum(weights)
            if total == 0:
                continue
            bary = [w / total for w in weights]
            sample = [sum(b * Fraction(v[i]) for b, v in zip(bary, vals))
                      for i in range(n)]
            assert vector_norm(sample, norm).cmp(result.minimum) >= 0


def test_at_vertex_flag():
    # Minimum attained both at a vertex and along an edge: still a vertex hit.
    r = simplex_norm_min([(1,), (1,)], "linf")
    assert r.at_vertex
    r = simplex_norm_min([(0,), (1,)], "l1")
    assert r.at_vertex
    assert r.minimum == ExactRadius.of(0)
