"""Seeded random streams.

Every random stream is a PCG64 generator seeded from
``SeedSequence(master_seed, spawn_key=key)``. The key is a tuple of
non-negative integers naming the stream's role, for example
``(GEN, chunk)`` for one block of clauses or
``(SWEEP, density_index, trial_index, purpose)`` for one Monte Carlo trial.
Streams with distinct keys are statistically independent, so work may be
split across processes without changing any result.
"""

from __future__ import annotations

import numpy as np

# first spawn-key element: what the stream is used for
GEN = 0
SWEEP = 1

# last spawn-key element for sweep trials
PURPOSE_GENERATE = 0
PURPOSE_REDUCE = 1
PURPOSE_ENGINE = 2


def stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=tuple(key))))


def as_generator(rng) -> np.random.Generator:
    """Accept a Generator, an int seed, or None."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)
