"""Deterministic randomness: every random draw in the package flows from a
single 64-bit seed through MT19937 streams split by SHA-256 of the seed and
a label path.  Report headers record PRNG_NAME so runs can be replayed.
"""

import hashlib
import random

PRNG_NAME = "mt19937/sha256-path-split"


def derive_seed(seed, *path):
    """A child seed for the stream identified by (seed, *path)."""
    h = hashlib.sha256()
    h.update(str(int(seed)).encode())
    for part in path:
        h.update(b"/")
        h.update(str(part).encode())
    return int.from_bytes(h.digest()[:8], "big")


def derive_rng(seed, *path):
    """An independent MT19937 stream for the given label path."""
    return random.Random(derive_seed(seed, *path))


def prng_header(seed):
    return {"prng": PRNG_NAME, "seed": int(seed)}
