"""A small fully specified PRNG so sampled reports reproduce across implementations.

Generator: xorshift64* (Vigna 2014).
    x ^= x >> 12; x ^= x << 25; x ^= x >> 27   (mod 2**64)
    output = x * 0x2545F4914F6CDD1D mod 2**64
Seeding: the initial state is one splitmix64 step applied to
``seed + stream * 0x9E3779B97F4A7C15`` (mod 2**64); a zero state is replaced by
the splitmix64 increment.  Bounded integers use rejection sampling (no modulo bias).
"""
from __future__ import annotations

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MULT = 0x2545F4914F6CDD1D


def splitmix64(z: int) -> int:
    z = (z + GOLDEN) & MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int = 0, stream: int = 0):
        state = splitmix64((seed + stream * GOLDEN) & MASK)
        self.state = state or GOLDEN

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        return (x * MULT) & MASK

    def below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        threshold = (1 << 64) % n
        while True:
            r = self.next_u64()
            if r >= threshold:
                return r % n

    def sample(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), ascending (partial Fisher-Yates)."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot sample {k} of {n}")
        pool = list(range(n))
        for i in range(k):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:k])
