"""Deterministic random stream used by the sampler and scenario generator.

The generator is pinned so that identical seeds give identical draw
sequences on every platform and in every implementation of the file
formats:

* the two 64-bit state words are seeded with consecutive outputs of
  splitmix64 (Steele/Lea/Flood mixing constants) applied to the seed;
* draws come from xoroshiro128++ (Blackman/Vigna), i.e.
  ``result = rotl64(s0 + s1, 17) + s0`` followed by the state update
  ``s1 ^= s0; s0 = rotl64(s0, 49) ^ s1 ^ (s1 << 21); s1 = rotl64(s1, 28)``;
* ``uniform()`` maps a draw to [0, 1) as ``(u64 >> 11) * 2**-53``.

The first eight raw draws for seed 0 are republished in
docs/formats.md and frozen in the test suite as a conformance vector.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15


def _splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step; returns (output, advanced state)."""
    state = (state + _SPLITMIX_GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)), state


def _rotl64(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class RngStream:
    """xoroshiro128++ stream with splitmix64 seeding.

    One stream is owned by exactly one consumer (planner instance or
    generator); it is never shared between concurrent workers.
    """

    __slots__ = ("_s0", "_s1", "draw_count")

    def __init__(self, seed: int):
        seed = int(seed) & _MASK64
        s0, carry = _splitmix64(seed)
        s1, _ = _splitmix64(carry)
        if s0 == 0 and s1 == 0:  # the all-zero state is a fixed point
            s1 = _SPLITMIX_GAMMA
        self._s0 = s0
        self._s1 = s1
        self.draw_count = 0

    @property
    def state(self) -> tuple[int, int]:
        return self._s0, self._s1

    def next_u64(self) -> int:
        s0 = self._s0
        s1 = self._s1
        result = (_rotl64((s0 + s1) & _MASK64, 17) + s0) & _MASK64
        s1 ^= s0
        self._s0 = _rotl64(s0, 49) ^ s1 ^ ((s1 << 21) & _MASK64)
        self._s1 = _rotl64(s1, 28)
        self.draw_count += 1
        return result

    def uniform(self) -> float:
        """Uniform double in [0, 1) with 53 random mantissa bits."""
        return (self.next_u64() >> 11) * 1.1102230246251565e-16  # 2**-53

    def uniform_in(self, lo: float, hi: float) -> float:
        """Uniform double in [lo, hi); returns lo when the range is empty."""
        return lo + (hi - lo) * self.uniform()
