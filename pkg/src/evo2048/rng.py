"""Seedable, portable pseudo-random generator used for every random draw.

The generator is xoshiro256** (Blackman & Vigna) seeded through splitmix64.
Both algorithms are fixed by this module and re-implemented verbatim inside
the compiled engine kernels, so replays are reproducible across backends,
platforms and process boundaries.

Draw conventions (relied on by replay and by the kernel twin):

* ``random()``  -- one ``next_u64`` call, top 53 bits mapped to [0, 1).
* ``randbelow(n)`` -- one ``next_u64`` call, multiply-shift bounding
  ``(x * n) >> 64``; bias is below ``n / 2**64`` and irrelevant here.
* ``gauss()``  -- two ``next_u64`` calls (Box-Muller, no spare caching).
* a tile spawn draws the cell first (``randbelow``), then the exponent
  (``random()`` compared against the 2-tile probability).
"""

from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 finalizer; a high-quality 64-bit mixing function."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (next_state, output)."""
    state = (state + _GOLDEN) & MASK64
    return state, mix64(state)


def derive(key: int, *path: int) -> int:
    """Derive an independent 64-bit subseed from a key and an index path.

    Used to split one master seed into named streams (game spawns vs.
    playouts, per-cycle mutation draws, per-playout substreams) without
    serializing generator state.
    """
    s = key & MASK64
    for p in path:
        s = mix64(((s ^ (p & MASK64)) + _GOLDEN) & MASK64)
    return s


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256StarStar:
    """xoshiro256** with splitmix64 state expansion from a 64-bit seed."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int):
        st = seed & MASK64
        st, self.s0 = splitmix64(st)
        st, self.s1 = splitmix64(st)
        st, self.s2 = splitmix64(st)
        st, self.s3 = splitmix64(st)

    def next_u64(self) -> int:
        s1 = self.s1
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        self.s2 ^= self.s0
        self.s3 ^= s1
        self.s1 ^= self.s2
        self.s0 ^= self.s3
        self.s2 ^= t
        self.s3 = _rotl(self.s3, 45)
        return result

    def random(self) -> float:
        """Uniform double in [0, 1) using the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) via multiply-shift bounding."""
        if n <= 0:
            raise ValueError("randbelow() needs n >= 1")
        return (self.next_u64() * n) >> 64

    def gauss(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        """Normal draw via Box-Muller; consumes exactly two u64 draws."""
        u1 = ((self.next_u64() >> 11) + 1) * 2.0**-53  # in (0, 1]
        u2 = (self.next_u64() >> 11) * 2.0**-53
        z = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
        return mu + sigma * z

    @classmethod
    def from_state(cls, s0: int, s1: int, s2: int, s3: int) -> "Xoshiro256StarStar":
        rng = object.__new__(cls)
        rng.s0, rng.s1, rng.s2, rng.s3 = (
            s0 & MASK64,
            s1 & MASK64,
            s2 & MASK64,
            s3 & MASK64,
        )
        return rng

    def state(self) -> tuple[int, int, int, int]:
        return (self.s0, self.s1, self.s2, self.s3)

    def copy(self) -> "Xoshiro256StarStar":
        dup = object.__new__(Xoshiro256StarStar)
        dup.s0, dup.s1, dup.s2, dup.s3 = self.s0, self.s1, self.s2, self.s3
        return dup
