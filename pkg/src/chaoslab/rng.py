"""Seeded random streams.

All stochastic code draws raw 64-bit words from numpy's ``SFC64`` bit
generator.  Raw words are stable across numpy releases and platforms, and
the compiled kernels read the same stream through numpy's C API.
"""
import numpy as np

PRNG_NAME = "SFC64"
_TWO_M52 = 2.0 ** -52
_MAX_SEED = 2 ** 64


def bit_generator(seed: int) -> np.random.SFC64:
    seed = int(seed)
    if not 0 <= seed < _MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.SFC64(seed)


def uniform_open(bitgen, count: int) -> np.ndarray:
    """``count`` uniforms on the open interval (0, 1), 52-bit resolution."""
    raw = bitgen.random_raw(count)
    return ((raw >> np.uint64(12)).astype(np.float64) + 0.5) * _TWO_M52
