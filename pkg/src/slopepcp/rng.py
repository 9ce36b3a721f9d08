"""Deterministic 64-bit PRNG for reproducible synthetic datasets.

Uses xorshift64* (Vigna's multiplier variant): the 64-bit state is updated

    x ^= x >> 12;  x ^= (x << 25) & 2**64-1;  x ^= x >> 27

and the output is (x * 0x2545F4914F6CDD1D) mod 2**64. Uniform doubles take
the top 53 output bits, giving values in [0, 1). Seeding runs the raw seed
through one splitmix64 step so that seed 0 is usable (xorshift state must
be nonzero).

Test vectors for seed = 1 (first three next_u64 outputs):
    0x4B46A55DF3611B9B, 0xD7E1F1410E763EF4, 0x5F14EC66975F9B06
The test suite pins these, plus the first uniform doubles, to guarantee
byte-identical datasets across runs and platforms.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_MULT = 0x2545F4914F6CDD1D


def _splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class Xorshift64Star:
    """xorshift64* generator; state is a single nonzero 64-bit word."""

    def __init__(self, seed: int) -> None:
        state = _splitmix64(seed & _MASK)
        if state == 0:
            state = 0x9E3779B97F4A7C15
        self._state = state

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self._state = x
        return (x * _MULT) & _MASK

    def next_float(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.next_float()
