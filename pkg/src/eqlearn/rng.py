"""Deterministic 64-bit PRNG and exact-rational weighted sampling.

The generator is SplitMix64: state advances by the golden-ratio increment
0x9E3779B97F4A7C15 and each output is the standard two-round multiply-xor
finalizer.  Per-trial seeds are derived with `mix64(seed, index)`, defined
bit-exactly below so independent implementations can reproduce the streams.

Sampling maps a raw 64-bit draw u to the rational u / 2**64 and inverts the
exact cumulative weights; no floating point enters the probability path.
"""

from __future__ import annotations

from fractions import Fraction

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _finalize(z):
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def mix64(seed, index):
    """Per-trial seed: finalize(seed + GOLDEN * (index + 1)) over 64 bits."""
    return _finalize((seed + GOLDEN * (index + 1)) & MASK64)


class SplitMix64:
    """Seeded deterministic generator; identical seeds give identical streams."""

    def __init__(self, seed):
        self._state = seed & MASK64

    def next_u64(self):
        self._state = (self._state + GOLDEN) & MASK64
        return _finalize(self._state)

    def below(self, n):
        """Uniform integer in [0, n), exact via rejection sampling."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def choose_weighted(self, items, weights):
        """Pick an item with probability proportional to its exact weight."""
        if len(items) != len(weights) or not items:
            raise ValueError("items and weights must be nonempty and aligned")
        total = sum((Fraction(w) for w in weights), Fraction(0))
        if total <= 0:
            raise ValueError("total weight must be positive")
        r = Fraction(self.next_u64(), 1 << 64) * total
        acc = Fraction(0)
        for item, w in zip(items, weights):
            acc += w
            if acc > r:
                return item
        return items[-1]
