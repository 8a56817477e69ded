"""Per-trial random streams: xoshiro256** seeded through SplitMix64.

Trial ``t`` of an experiment with seed ``s`` draws from the stream keyed by
``(s, t)``, so results do not depend on the order or the thread that runs a
trial. Streams are plain ``uint64[4]`` state arrays so that compiled kernels
can advance them without touching Python objects.
"""

from __future__ import annotations

import numpy as np
from numba import njit, uint64

MASK64 = (1 << 64) - 1


@njit(cache=True)
def _splitmix64(x):
    # x is the running state; returns (new_state, output)
    x = uint64(x + uint64(0x9E3779B97F4A7C15))
    z = x
    z = uint64((z ^ (z >> uint64(30))) * uint64(0xBF58476D1CE4E5B9))
    z = uint64((z ^ (z >> uint64(27))) * uint64(0x94D049BB133111EB))
    return x, z ^ (z >> uint64(31))


@njit(cache=True)
def _rotl(x, k):
    return (x << uint64(k)) | (x >> uint64(64 - k))


@njit(cache=True)
def next_u64(s):
    """Advance the xoshiro256** state ``s`` in place and return the output."""
    result = uint64(_rotl(uint64(s[1] * uint64(5)), 7) * uint64(9))
    t = s[1] << uint64(17)
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return result


@njit(cache=True)
def next_double(s):
    """Uniform double in [0, 1) with 53 random bits."""
    return (next_u64(s) >> uint64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True)
def seed_state(s, seed, trial):
    """Fill ``s`` with the stream for ``(seed, trial)``."""
    x = uint64(seed)
    x, k = _splitmix64(x)
    # fold the trial index into the key so neighbouring trials decorrelate
    x = uint64(k ^ uint64(trial) * uint64(0xD1B54A32D192ED03))
    for i in range(4):
        x, s[i] = _splitmix64(x)


def stream(seed: int, trial: int = 0) -> np.ndarray:
    """Fresh state array for trial ``trial`` of an experiment seeded with ``seed``."""
    s = np.zeros(4, dtype=np.uint64)
    seed_state(s, np.uint64(seed & MASK64), np.uint64(trial & MASK64))
    return s
