"""Deterministic counter-based random number generator.

Every stochastic feature of this package (the random-pattern baseline and
the optional bucket noise) draws from the generator defined here, so that
results are reproducible bit-for-bit from a 64-bit seed alone, on any
platform and any library version.

The generator is the SplitMix64 mixing function applied to a counter:

    word(seed, i) = mix64((seed + (i + 1) * PHI) mod 2^64)

where ``PHI = 0x9E3779B97F4A7C15`` (the 64-bit golden-ratio increment) and
``mix64`` is the xor-shift/multiply finalizer

    z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
    z ^= z >> 27;  z *= 0x94D049BB133111EB
    z ^= z >> 31

with all arithmetic modulo 2^64.  Because ``word`` is a pure function of
``(seed, i)``, any draw can be computed independently of any other: streams
can be split by counter range and evaluated in parallel or out of order
without changing a single bit of the output.

Derived draws, also fixed by this module:

* bits      -- word ``i`` is consumed most-significant bit first.
* uniform   -- ``((word >> 11) + 1) * 2^-53``, a double in (0, 1].
* gaussian  -- one Box-Muller pair per two words:
               ``sqrt(-2 ln u1) * cos(2 pi u2)`` with ``u1`` from the even
               word and ``u2`` from the odd word.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_PHI = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a bijective mix of one 64-bit word."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def word(seed: int, index: int) -> int:
    """The ``index``-th 64-bit output word of the stream for ``seed``."""
    if index < 0:
        raise ValueError("word index must be nonnegative")
    return mix64((seed + (index + 1) * _PHI) & _MASK64)


def uniform(seed: int, index: int) -> float:
    """Word ``index`` mapped to a double in (0, 1]."""
    return ((word(seed, index) >> 11) + 1) * 2.0**-53


def gaussian(seed: int, index: int) -> float:
    """The ``index``-th standard normal draw (Box-Muller, two words each)."""
    u1 = uniform(seed, 2 * index)
    u2 = uniform(seed, 2 * index + 1)
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


class BitStream:
    """Sequential bit reader over the word stream of one seed.

    Bits come from successive words, most-significant bit first.  Two
    streams with the same seed always yield the same bit sequence.
    """

    def __init__(self, seed: int):
        self._seed = seed
        self._word_index = 0
        self._bits_left = 0
        self._current = 0

    def next_bit(self) -> int:
        if self._bits_left == 0:
            self._current = word(self._seed, self._word_index)
            self._word_index += 1
            self._bits_left = 64
        self._bits_left -= 1
        return (self._current >> self._bits_left) & 1

    def take(self, count: int) -> list[int]:
        return [self.next_bit() for _ in range(count)]
