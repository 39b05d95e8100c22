"""Class means ḡ_m: the average squared image distance over all ordered m-segments.

Exact and enumerated modes walk every point and every offset pattern of
the level (vectorized over points); sampled mode draws uniform segments
from the (1, m) stream of the seed.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from enflo.config import DEFAULTS
from enflo.embeddings import EmbeddingMap
from enflo.space import (
    SpaceSpec,
    flat_index,
    point_array,
    sample_segment_arrays,
    segment_offsets,
)
from enflo.streams import SEGMENTS, derive_rng

from .models import MeanTable, Mode, Number, PoincareError, SampledMean

logger = logging.getLogger(__name__)

_INT64_MAX = 2**63 - 1


class IrrationalMapError(PoincareError):
    """A map with float output was passed to an exact computation."""

    pass


@dataclass
class ClassStatistics:
    """Sum, count and extremes of squared image distances over one segment class."""

    level: int
    count: int
    total: Number
    minimum: Number
    maximum: Number

    @property
    def mean(self) -> Number:
        if isinstance(self.total, float):
            return self.total / self.count
        return Fraction(self.total, self.count)


def image_array(
    spec: SpaceSpec,
    fmap: EmbeddingMap,
    *,
    exact: bool,
    budget: int = DEFAULTS["budgets"]["max_points"],
) -> np.ndarray:
    """Images of every point, row i for the point with flat index i.

    Exact images are int64 when every entry is a small int and Python
    objects (int or Fraction) otherwise; enumerated images are float64.

    Raises:
        IrrationalMapError: If exact and the map is not rational.
        BudgetExceededError: If q^d > budget.
    """
    P = point_array(spec, budget)
    if not exact:
        return fmap.eval_batch(P)
    if not fmap.is_rational:
        raise IrrationalMapError(
            f"{fmap.kind} map has irrational values; use enumerated or sampled mode"
        )
    rows = [fmap.image(coords) for coords in map(tuple, P.tolist())]
    return np.array(rows, dtype=np.int64 if _fits_int64(spec, rows) else object)


def _fits_int64(spec: SpaceSpec, rows: list) -> bool:
    """True when one segment's or one simplex's squared distance fits int64.

    Sums across segments or isometries are taken in Python ints
    (see exact_total), so only these per-item sums run in numpy.
    """
    if not rows or not all(isinstance(x, int) for row in rows for x in row):
        return False
    largest = max(abs(x) for row in rows for x in row)
    terms = len(rows[0]) * 2 * spec.p**2
    return terms * (2 * largest) ** 2 <= _INT64_MAX


def exact_total(values: np.ndarray) -> int | Fraction:
    """Sum of an int64 or object array without wrapping."""
    return sum(values.tolist(), 0)


def class_statistics(
    spec: SpaceSpec,
    m: int,
    images: np.ndarray,
    *,
    exact: bool,
) -> ClassStatistics:
    """Statistics of |f(a) - f(b)|² over every ordered m-segment (a, b).

    Args:
        spec: The space.
        m: Segment level.
        images: Output of image_array for the same space.
        exact: Keep sums as Python ints / Fractions.
    """
    P = point_array(spec, spec.num_points)
    totals, lows, highs = [], [], []
    for indices, deltas in segment_offsets(spec, m):
        B = P.copy()
        columns = list(indices)
        B[:, columns] = np.mod(B[:, columns] + np.asarray(deltas), spec.q)
        sq = ((images[flat_index(spec, B)] - images) ** 2).sum(axis=1)
        totals.append(exact_total(sq) if exact else sq.sum())
        lows.append(sq.min())
        highs.append(sq.max())
    count = len(P) * len(totals)
    if exact:
        total = sum(exact_value(x) for x in totals)
        low, high = min(map(exact_value, lows)), max(map(exact_value, highs))
    else:
        total = math.fsum(float(x) for x in totals)
        low, high = float(min(lows)), float(max(highs))
    logger.debug("level %d: %d segments, total %s", m, count, total)
    return ClassStatistics(m, count, total, low, high)


def exact_value(value) -> int | Fraction:
    """Python int for numpy integers; ints and Fractions pass through."""
    return int(value) if isinstance(value, np.integer) else value


def exact_mean_g(
    spec: SpaceSpec,
    fmap: EmbeddingMap,
    m: int,
    budget: int = DEFAULTS["budgets"]["max_points"],
) -> Fraction:
    """Exact mean of squared image distances over all ordered m-segments.

    Raises:
        IrrationalMapError: If the map is not rational.
        BudgetExceededError: If q^d > budget.
        LevelOutOfRangeError: If m is outside [0, L].
    """
    spec.check_level(m)
    images = image_array(spec, fmap, exact=True, budget=budget)
    return Fraction(class_statistics(spec, m, images, exact=True).mean)


def enumerated_mean_g(
    spec: SpaceSpec,
    fmap: EmbeddingMap,
    m: int,
    budget: int = DEFAULTS["budgets"]["max_points"],
) -> float:
    """Floating-point counterpart of exact_mean_g for any map."""
    spec.check_level(m)
    images = image_array(spec, fmap, exact=False, budget=budget)
    return float(class_statistics(spec, m, images, exact=False).mean)


def sampled_squares(
    spec: SpaceSpec, fmap: EmbeddingMap, m: int, samples: int, seed: int
) -> np.ndarray:
    """Squared image distances of ``samples`` uniform m-segments."""
    A, B = sample_segment_arrays(spec, m, samples, derive_rng(seed, SEGMENTS, m))
    return ((fmap.eval_batch(A) - fmap.eval_batch(B)) ** 2).sum(axis=1)


def sampled_mean_g(
    spec: SpaceSpec, fmap: EmbeddingMap, m: int, samples: int, seed: int = 0
) -> SampledMean:
    """Monte-Carlo estimate of ḡ_m with its standard error.

    Raises:
        PoincareError: If samples < 2.
    """
    if samples < 2:
        raise PoincareError(f"sampled mode needs at least 2 samples, got {samples}")
    sq = sampled_squares(spec, fmap, m, samples, seed)
    return SampledMean(
        estimate=float(sq.mean()),
        stderr=float(sq.std(ddof=1) / math.sqrt(samples)),
        samples=samples,
    )


def mean_table(
    spec: SpaceSpec,
    fmap: EmbeddingMap,
    mode: Mode,
    *,
    budget: int = DEFAULTS["budgets"]["max_points"],
    samples: int = DEFAULTS["sampling"]["samples"],
    seed: int = DEFAULTS["sampling"]["seed"],
) -> MeanTable:
    """ḡ_0..ḡ_L in the requested mode."""
    if mode is Mode.sampled:
        estimates = [sampled_mean_g(spec, fmap, m, samples, seed) for m in spec.levels]
        return MeanTable(
            mode,
            [e.estimate for e in estimates],
            [e.samples for e in estimates],
            [e.stderr for e in estimates],
        )
    exact = mode is Mode.exact
    images = image_array(spec, fmap, exact=exact, budget=budget)
    stats = [class_statistics(spec, m, images, exact=exact) for m in spec.levels]
    return MeanTable(mode, [s.mean for s in stats], [s.count for s in stats])
