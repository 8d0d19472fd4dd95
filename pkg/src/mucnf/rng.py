"""Seeded PRNG and shuffle, pinned precisely for cross-implementation reproducibility.

The generator is splitmix64 (Steele/Lea/Flood finalizer over a 64-bit
counter state). Bounded draws use rejection sampling so every value in
[0, bound) is exactly equally likely. Shuffling is the classic descending
Fisher-Yates. All three pieces are specified in the README so another
implementation can reproduce permutations bit-for-bit from the same seed.
"""

from __future__ import annotations

from typing import List

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """splitmix64 stream seeded by a 64-bit unsigned integer."""

    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self._state = seed

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform draw from [0, bound), bias-free via rejection."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        threshold = (1 << 64) % bound
        while True:
            r = self.next_u64()
            if r >= threshold:
                return r % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates: for i = n-1 .. 1, swap items[i] with items[below(i+1)]."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def permutation(n: int, seed: int) -> List[int]:
    """Seeded uniform permutation of [1..n]."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    items = list(range(1, n + 1))
    SplitMix64(seed).shuffle(items)
    return items
