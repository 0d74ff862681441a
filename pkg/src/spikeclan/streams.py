"""Deterministic random stream derivation.

Replicate k of a run keyed by ``master_seed`` gets the counter-based
stream Philox(key=(master_seed, k)).  Streams for distinct keys are
independent by construction, so results never depend on execution order
or on how replicates are distributed over workers.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_rng(*key: int) -> np.random.Generator:
    """Generator for the stream identified by an integer key tuple."""
    if not key:
        raise ValueError("need at least one key component")
    words = [k & _MASK64 for k in key]
    while len(words) < 2:
        words.append(0)
    if len(words) > 2:
        raise ValueError("at most two key components are supported")
    return np.random.Generator(np.random.Philox(key=np.array(words, dtype=np.uint64)))


def as_rng(seed) -> np.random.Generator:
    """Coerce an int or an (int, int) key into a Generator; anything that
    already quacks like a Generator passes through unchanged."""
    if hasattr(seed, "standard_exponential") and hasattr(seed, "random"):
        return seed
    if isinstance(seed, tuple):
        return derive_rng(*seed)
    return derive_rng(int(seed))
