"""SplitMix64: the seeded generator behind all randomized verification.

The algorithm is fixed so runs are reproducible across platforms and
Python versions: state advances by the 64-bit odd constant 0x9E3779B97F4A7C15
and each output is the advanced state scrambled by two xor-shift-multiply
rounds (0xBF58476D1CE4E5B9, 0x94D049BB133111EB) and a final 31-bit xor-shift.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n); plain modulo, bias is negligible
        for the small n used in testing."""
        if n < 1:
            raise ValueError("n must be >= 1")
        return self.u64() % n

    def bits(self, count: int) -> list[int]:
        """`count` bits, drawn 64 per word."""
        out = []
        while len(out) < count:
            word = self.u64()
            take = min(64, count - len(out))
            out.extend((word >> i) & 1 for i in range(take))
        return out
