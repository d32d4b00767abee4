"""Pointed bottleneck matchings and distances."""

from collections import Counter
from fractions import Fraction

from rzero.barcode import Interval, PointedBarcode
from rzero.exact import ExactRadius
from rzero.matching import bottleneck, feasible_matching, interval_cost
from rzero.rng import RationalSampler, child_seed


def iv(b, d):
    return Interval(ExactRadius.of(Fraction(b)), ExactRadius.of(Fraction(d)))


def bc(bars, distinguished=None):
    counter = Counter()
    for interval in bars:
        counter[interval] += 1
    return PointedBarcode.from_multiset(counter, distinguished)


def test_identity_matching_at_zero():
    one = iv(0, 1)
    b = bc([one, iv(1, 2)], distinguished=one)
    m = feasible_matching(b, b, ExactRadius.of(0))
    assert m is not None
    assert m.distinguished_matched
    assert sorted(m.pairs, key=lambda p: p[0].sort_key()) == [(one, one), (iv(1, 2), iv(1, 2))]
    assert not m.unmatched_left and not m.unmatched_right


def test_lone_distinguished_needs_strictly_larger_delta():
    one = iv(0, 1)
    left = bc([one], distinguished=one)
    right = bc([])
    half = ExactRadius.of(Fraction(1, 2))
    assert feasible_matching(left, right, half) is None
    assert feasible_matching(left, right, half, closed=True) is not None
    assert feasible_matching(left, right, ExactRadius.of(Fraction(51, 100))) is not None
    assert bottleneck(left, right) == half


def test_distinguished_cannot_cross_match():
    one = iv(0, 1)
    left = bc([one], distinguished=one)
    right = bc([one])
    half = ExactRadius.of(Fraction(1, 2))
    assert feasible_matching(left, right, half) is None
    assert feasible_matching(left, right, ExactRadius.of(Fraction(3, 5))) is not None
    assert bottleneck(left, right) == half


def test_bottleneck_examples():
    assert bottleneck(bc([iv(0, 1)]), bc([iv(0, 1)])) == ExactRadius.of(0)
    assert bottleneck(bc([]), bc([])) == ExactRadius.of(0)
    assert bottleneck(bc([iv(0, 1)]), bc([iv(0, 2)])) == ExactRadius.of(1)


def test_matching_witness_is_valid():
    left = bc([iv(0, 1), iv(0, 3), iv(2, 4)])
    right = bc([iv(0, 3), iv(1, 4)])
    delta = bottleneck(left, right)
    m = feasible_matching(left, right, delta, closed=True)
    assert m is not None
    doubled = delta.scale(2)
    for u, v in m.pairs:
        assert interval_cost(u, v).cmp(delta) <= 0
    for u in m.unmatched_left + m.unmatched_right:
        assert u.length().cmp(doubled) <= 0


def random_barcode(seed):
    sampler = RationalSampler(seed)
    bars = []
    for _ in range(sampler.integer(0, 4)):
        b = Fraction(sampler.integer(0, 6), 2)
        d = b + Fraction(sampler.integer(1, 6), 2)
        bars.append(iv(b, d))
    distinguished = None
    if bars and sampler.integer(0, 1):
        distinguished = bars[0]
    return bc(bars, distinguished)


def test_symmetry_and_triangle():
    for t in range(30):
        a = random_barcode(child_seed(900, 3 * t))
        b = random_barcode(child_seed(900, 3 * t + 1))
        c = random_barcode(child_seed(900, 3 * t + 2))
        dab = bottleneck(a, b)
        dba = bottleneck(b, a)
        assert dab == dba
        dac = bottleneck(a, c)
        dcb = bottleneck(c, b)
        # Triangle inequality for the infimum distances.
        lhs = dab
        rhs_pair = dac.gap(ExactRadius.of(0))  # copy
        # compare dab <= dac + dcb using rationals (all values rational here)
        assert lhs.as_fraction() <= dac.as_fraction() + dcb.as_fraction()
        assert bottleneck(a, a) == ExactRadius.of(0)


def test_feasibility_monotone():
    for t in range(20):
        a = random_barcode(child_seed(901, 2 * t))
        b = random_barcode(child_seed(901, 2 * t + 1))
        deltas = [ExactRadius.of(Fraction(n, 4)) for n in range(0, 9)]
        feas = [feasible_matching(a, b, d) is not None for d in deltas]
        for i in range(len(feas) - 1):
            if feas[i]:
                assert feas[i + 1], (t, i)


def test_sqrt_endpoint_bottleneck():
    # l2-flavoured endpoints: exact comparisons through radical arithmetic.
    s2 = Interval(ExactRadius.of(0), ExactRadius.sqrt(2))
    s3 = Interval(ExactRadius.of(0), ExactRadius.sqrt(3))
    d = bottleneck(bc([s2]), bc([s3]))
    assert d == ExactRadius(3, 2)  # sqrt(3) - sqrt(2)
    # Asymmetric: sqrt bar versus nothing falls back to the half-length.
    d2 = bottleneck(bc([s2]), bc([]))
    assert d2 == ExactRadius.sqrt(Fraction(1, 2))
