"""Seeded random sources and integer seed mixing.

Every stochastic routine in the package takes an explicit random source;
the same seed always reproduces the same stream.
"""

from __future__ import annotations

import numpy as np

RandomSource = np.random.Generator

_MASK64 = (1 << 64) - 1


def make_rng(seed: int) -> RandomSource:
    """Create an independent PCG64 stream for the given 64-bit seed."""
    return np.random.Generator(np.random.PCG64(int(seed) & _MASK64))


def splitmix64(x: int) -> int:
    """One splitmix64 finalizer round; a bijection on 64-bit integers."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def fnv1a64(text: str) -> int:
    """FNV-1a hash of a short tag, used to separate named substreams."""
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & _MASK64
    return h


def mix_seed(*parts: int) -> int:
    """Chain-mix integer parts into one seed.

    Each part is folded in with xor followed by a splitmix64 round, so for
    any fixed prefix the map from the next part to the result is injective:
    varying a single part can never collide.
    """
    if not parts:
        raise ValueError("mix_seed needs at least one part")
    h = splitmix64(parts[0] & _MASK64)
    for part in parts[1:]:
        h = splitmix64(h ^ (part & _MASK64))
    return h
