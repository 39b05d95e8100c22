"""The double-simplex inequality for Euclidean placements.

For points u_1..u_p, v_1..v_p in R^D,

    sum_{k,l} |u_k - v_l|^2 - sum_{k<l} (|u_k - u_l|^2 + |v_k - v_l|^2)
        = |sum_k u_k - sum_k v_k|^2

so the connecting lines always outweigh the edges. With int or Fraction
coordinates both sides are computed exactly.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from enflo.config import DEFAULTS
from enflo.streams import CONFIGS, derive_rng

from .models import EuclideanConfig, GapResult, Number, exact_number

logger = logging.getLogger(__name__)


def squared_distance(x, y) -> Number:
    return sum((a - b) ** 2 for a, b in zip(x, y))


def double_simplex_gap(
    cfg: EuclideanConfig, rel_tol: float = DEFAULTS["sampling"]["rel_tol"]
) -> GapResult:
    """Connecting-line sum, edge sum, their gap and the witness |Σu - Σv|².

    Exact configurations compare gap and witness with ==; float ones within
    rel_tol of the connecting-line sum.
    """
    u, v, p = cfg.u, cfg.v, cfg.p
    sum_c = sum(squared_distance(uk, vl) for uk in u for vl in v)
    sum_s = sum(
        squared_distance(side[k], side[l])
        for side in (u, v)
        for k in range(p)
        for l in range(k + 1, p)
    )
    gap = sum_c - sum_s
    witness = sum(
        (sum(point[i] for point in u) - sum(point[i] for point in v)) ** 2
        for i in range(cfg.dim)
    )
    exact = cfg.is_exact
    if exact:
        holds = gap == witness
    else:
        holds = math.isclose(gap, witness, rel_tol=rel_tol, abs_tol=rel_tol * max(sum_c, 1.0))
    return GapResult(sum_c, sum_s, gap, witness, exact, holds)


def random_config(
    rng: np.random.Generator,
    p: int,
    dim: int,
    *,
    low: int = -100,
    high: int = 100,
    exact: bool = True,
) -> EuclideanConfig:
    """Random double simplex with integer (exact) or uniform float coordinates."""
    if exact:
        values = rng.integers(low, high + 1, size=(2, p, dim)).tolist()
    else:
        values = rng.uniform(low, high, size=(2, p, dim)).tolist()
    u, v = (tuple(tuple(point) for point in side) for side in values)
    return EuclideanConfig(u, v)


@dataclass
class GapTrials:
    """Outcome of many random gap checks."""

    trials: int
    exact: bool
    identity_failures: int
    negative_gaps: int
    min_gap: Number | None
    first_failure: dict | None = None

    @property
    def passed(self) -> bool:
        return self.identity_failures == 0 and self.negative_gaps == 0

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "trials": self.trials,
            "exact": self.exact,
            "identity_failures": self.identity_failures,
            "negative_gaps": self.negative_gaps,
            "min_gap": exact_number(self.min_gap),
            "first_failure": self.first_failure,
        }


def gap_trials(
    trials: int,
    seed: int = 0,
    *,
    exact: bool = True,
    p_range: tuple[int, int] = (2, 6),
    dim_range: tuple[int, int] = (1, 16),
    rel_tol: float = DEFAULTS["sampling"]["rel_tol"],
) -> GapTrials:
    """Check the gap identity on random configurations.

    p and D are uniform on the inclusive ranges; coordinates are integers
    in [-100, 100] (exact) or floats in the same interval.
    """
    rng = derive_rng(seed, CONFIGS)
    failures = negatives = 0
    min_gap: Number | None = None
    first = None
    for trial in range(trials):
        p = int(rng.integers(p_range[0], p_range[1] + 1))
        dim = int(rng.integers(dim_range[0], dim_range[1] + 1))
        result = double_simplex_gap(random_config(rng, p, dim, exact=exact), rel_tol)
        min_gap = result.gap if min_gap is None else min(min_gap, result.gap)
        bad_identity = not result.identity_holds
        floor = 0 if exact else -rel_tol * max(result.sum_c, 1.0)
        bad_sign = result.gap < floor
        failures += bad_identity
        negatives += bad_sign
        if (bad_identity or bad_sign) and first is None:
            first = {"trial": trial, "p": p, "dim": dim, **result.to_dict()}
    logger.debug("%d gap trials, %d identity failures", trials, failures)
    return GapTrials(trials, exact, failures, negatives, min_gap, first)


def as_fraction_config(cfg: EuclideanConfig) -> EuclideanConfig:
    """Exact copy of a configuration (floats become their exact binary value)."""
    u, v = (tuple(tuple(Fraction(x) for x in point) for point in side) for side in (cfg.u, cfg.v))
    return EuclideanConfig(u, v)
