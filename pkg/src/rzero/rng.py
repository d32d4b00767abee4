"""Deterministic seeded randomness for probes, rays and perturbations.

All randomness in the package flows through splitmix64: a master seed plus a
stream index yields a child seed, and a child seed drives a generator of
bounded rationals.  The scheme is platform independent and documented so
that runs are reproducible byte for byte.
"""

from __future__ import annotations

from fractions import Fraction

_MASK = (1 << 64) - 1


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (next_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    z = z ^ (z >> 31)
    return state, z


def child_seed(master: int, index: int) -> int:
    """Per-stream seed derived from a master seed and a stream index."""
    state = (master ^ (index * 0xA0761D6478BD642F)) & _MASK
    _, out = splitmix64(state)
    return out


class RationalSampler:
    """Stream of uniform rationals with bounded denominator."""

    def __init__(self, seed: int, denominator: int = 1 << 16):
        self._state = seed & _MASK
        self.denominator = denominator

    def _next(self) -> int:
        self._state, out = splitmix64(self._state)
        return out

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in [low, high] (inclusive)."""
        span = high - low + 1
        return low + self._next() % span

    def unit(self) -> Fraction:
        """Uniform rational in [-1, 1] with the configured denominator."""
        return Fraction(self.integer(-self.denominator, self.denominator),
                        self.denominator)

    def vector(self, n: int) -> tuple[Fraction, ...]:
        return tuple(self.unit() for _ in range(n))

    def nonzero_vector(self, n: int) -> tuple[Fraction, ...]:
        while True:
            v = self.vector(n)
            if any(x != 0 for x in v):
                return v
