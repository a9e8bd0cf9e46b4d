"""SplitMix64 stream used by the randomized checks.

The sequence is fixed so that reports are reproducible from a seed alone:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

(all arithmetic modulo 2**64).  Uniform doubles use the top 53 bits.
"""

import cmath
import math

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed=0):
        self.state = int(seed) & _MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self):
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo=0.0, hi=1.0):
        return lo + (hi - lo) * self.random()

    def complex_box(self, half_width=1.0):
        return complex(self.uniform(-half_width, half_width), self.uniform(-half_width, half_width))

    def unit_phase(self, lo=0.0, hi=2 * math.pi):
        return cmath.exp(1j * self.uniform(lo, hi))

    def normal(self):
        # Box-Muller, one value per call
        u1 = 1.0 - self.random()
        u2 = self.random()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2 * math.pi * u2)
