"""Deterministic random streams derived from one top-level seed.

A task's stream is ``default_rng(SeedSequence(seed, spawn_key=key))`` where
``key`` is a fixed tuple naming the task. Two runs with the same seed draw
identical numbers for every task regardless of the order tasks run in, so
tasks can be farmed out to workers without changing results.

Stream keys in use:
    (1, m)       random segments at level m
    (2,)         random isometries
    (3, m)       orbit sampling for double simplices at level m
    (4, t)       moduli pair sampling at scale t
    (5, index)   random integer-valued maps
    (6,)         RandomLinear matrices
    (7, index)   probe segments in transitivity checks
    (8,)         random Euclidean double simplices
    (9,)         vertex pairs in embedding checks
"""

import numpy as np

SEGMENTS = 1
ISOMETRIES = 2
ORBITS = 3
MODULI = 4
RANDOM_MAPS = 5
RANDOM_LINEAR = 6
PROBES = 7
CONFIGS = 8
GRAPH_PAIRS = 9


def derive_rng(seed: int, *key: int) -> np.random.Generator:
    """Return the generator for the task named by ``key`` under ``seed``.

    Args:
        seed: Top-level non-negative seed.
        key: Task key (see module docstring).

    Returns:
        A fresh numpy Generator.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))
