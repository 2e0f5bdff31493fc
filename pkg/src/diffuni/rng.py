"""SplitMix64, the seedable generator behind every sampled or randomized run.

One step, all arithmetic mod 2^64::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

``below(n)`` returns ``next() % n``.  The modulo bias is below 2^-40 for every
n this package asks for, and keeping it simple makes the stream easy to
reproduce in other languages.
"""

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n

    def nonzero(self, q: int) -> int:
        """Uniform-ish element of {1, ..., q-1}."""
        return self.below(q - 1) + 1
