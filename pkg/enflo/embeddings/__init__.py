"""Candidate embedding maps and their empirical moduli.

Usage:
    from enflo.embeddings import CircleLift, empirical_moduli

    report = empirical_moduli(spec, CircleLift(spec), samples_per_scale=500, seed=1)
"""

from .maps import (
    CircleLift,
    CoordinateLift,
    EmbeddingError,
    EmbeddingMap,
    MissingTableEntryError,
    RandomLinear,
    Tabulated,
    constant_map,
    load_table_csv,
    random_integer_map,
    save_table_csv,
    tabulate,
)
from .moduli import (
    ModuliReport,
    UnreachableScaleError,
    distortion_contradiction_scale,
    empirical_moduli,
    exhaustive_moduli,
)

__all__ = [
    "EmbeddingMap",
    "CircleLift",
    "CoordinateLift",
    "RandomLinear",
    "Tabulated",
    "tabulate",
    "constant_map",
    "random_integer_map",
    "load_table_csv",
    "save_table_csv",
    "ModuliReport",
    "empirical_moduli",
    "exhaustive_moduli",
    "distortion_contradiction_scale",
    "EmbeddingError",
    "MissingTableEntryError",
    "UnreachableScaleError",
]
