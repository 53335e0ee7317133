"""Counter-based random number streams.

Contract (documented in the README and pinned by tests/golden/rng_seed0.json):

* generator: numpy Philox (counter-based, 4x64), wrapped in
  ``numpy.random.Generator``;
* stream derivation: stream ``r`` of master seed ``s`` keys Philox with
  ``splitmix64(s XOR (r * 0x9E3779B97F4A7C15 mod 2**64))``.

Distinct (seed, r) pairs therefore get statistically independent streams,
and any replicate can be regenerated in isolation, which is what makes
parallel Monte Carlo runs independent of scheduling.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN64 = 0x9E3779B97F4A7C15


def splitmix64(x):
    """One splitmix64 output step for a 64-bit input."""
    x = (x + GOLDEN64) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64


def stream_key(seed, index=0):
    """64-bit Philox key for stream `index` of `seed`."""
    return splitmix64((int(seed) ^ ((int(index) * GOLDEN64) & MASK64)) & MASK64)


def stream(seed, index=0):
    """Independent Generator for (seed, index)."""
    return np.random.Generator(np.random.Philox(key=stream_key(seed, index)))
