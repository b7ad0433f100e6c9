"""Deterministic 64-bit sub-seed derivation.

All randomized components derive their generator seeds through
``hash64`` so that every run cell (matrix draw, init draw) is
reproducible from a single user seed.  The mixer is splitmix64 with the
usual constants:

    gamma = 0x9E3779B97F4A7C15
    m1    = 0xBF58476D1CE4E5B9
    m2    = 0x94D049BB133111EB

``hash64(a, b, c)`` folds left: ``h = 0``, then for each part ``p``,
``h = splitmix64(h ^ p)``.  The scheme is part of the bench file
contract (records are keyed by the derived seeds) and must not change.
"""

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One splitmix64 step on a 64-bit value."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def hash64(*parts: int) -> int:
    """Fold integer parts into one 64-bit seed."""
    h = 0
    for p in parts:
        h = splitmix64(h ^ (int(p) & _MASK64))
    return h
