"""Deterministic 64-bit PRNG used by every randomized routine.

The generator is SplitMix64, fixed here as part of the external contract so
that seeded samples and experiment reports are reproducible byte-for-byte
across platforms and Python versions:

    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9  mod 2^64
    z <- (z XOR (z >> 27)) * 0x94D049BB133111EB  mod 2^64
    output z XOR (z >> 31)

Derived streams (trial i of a seeded experiment) use
``derive_seed(seed, i)`` = the first output of SplitMix64 seeded with
``(seed + (i + 1) * 0x9E3779B97F4A7C15) mod 2^64``.
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        """Integer in [0, m). Modulo reduction; bias is irrelevant at our m."""
        if m <= 0:
            raise ValueError("m must be positive")
        return self.next_u64() % m

    def randrange(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi)."""
        return lo + self.below(hi - lo)

    def shuffle(self, items: list):
        """In-place Fisher-Yates."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def choice(self, items):
        return items[self.below(len(items))]


def derive_seed(seed: int, i: int) -> int:
    return SplitMix64((seed + (i + 1) * GOLDEN) & MASK64).next_u64()
