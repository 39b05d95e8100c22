"""Empirical compression and expansion moduli of an embedding map.

For each source scale t = 1..q/2 the raw minimum and maximum image
distance over pairs at source distance exactly t are recorded. Then

    rho1Hat(t) = min of the raw minima over scales >= t
    rho2Hat(t) = max of the raw maxima over scales <= t

so both are nondecreasing in t by construction.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from enflo.config import DEFAULTS
from enflo.errors import check_budget
from enflo.space import SpaceSpec, point_array
from enflo.streams import MODULI, derive_rng

from .maps import EmbeddingError, EmbeddingMap

logger = logging.getLogger(__name__)


class UnreachableScaleError(EmbeddingError):
    """No pair of points sits at the requested source distance."""

    pass


@dataclass
class ModuliReport:
    """Empirical moduli per scale; None where a scale has no samples."""

    mode: str
    scales: list[int]
    raw_min: list[float | None]
    raw_max: list[float | None]
    rho1: list[float | None]
    rho2: list[float | None]
    pair_counts: list[int]

    def at(self, t: int) -> tuple[float | None, float | None]:
        """(rho1Hat(t), rho2Hat(t))."""
        if t not in self.scales:
            raise UnreachableScaleError(f"scale {t} outside {self.scales[0]}..{self.scales[-1]}")
        i = self.scales.index(t)
        return self.rho1[i], self.rho2[i]

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "mode": self.mode,
            "scales": self.scales,
            "raw_min": self.raw_min,
            "raw_max": self.raw_max,
            "rho1": self.rho1,
            "rho2": self.rho2,
            "pair_counts": self.pair_counts,
        }


def _finish(
    mode: str, scales: list[int], lows: list, highs: list, counts: list[int]
) -> ModuliReport:
    rho1: list[float | None] = [None] * len(scales)
    running: float | None = None
    for i in reversed(range(len(scales))):
        if lows[i] is not None:
            running = lows[i] if running is None else min(running, lows[i])
        rho1[i] = running

    rho2: list[float | None] = [None] * len(scales)
    running = None
    for i in range(len(scales)):
        if highs[i] is not None:
            running = highs[i] if running is None else max(running, highs[i])
        rho2[i] = running

    return ModuliReport(mode, scales, lows, highs, rho1, rho2, counts)


def empirical_moduli(
    spec: SpaceSpec,
    fmap: EmbeddingMap,
    samples_per_scale: int,
    seed: int = 0,
) -> ModuliReport:
    """Sampled moduli: at scale t, pairs (a, a + offset) with max-metric offset exactly t.

    The offset has ±t on one uniformly chosen coordinate and uniform values
    in [-t, t] elsewhere; pairs are therefore at distance exactly t but not
    uniform among all such pairs.

    Raises:
        EmbeddingError: If samples_per_scale < 1.
    """
    if samples_per_scale < 1:
        raise EmbeddingError(f"samples_per_scale must be >= 1, got {samples_per_scale}")
    scales = list(range(1, spec.q // 2 + 1))
    lows, highs, counts = [], [], []
    for t in scales:
        rng = derive_rng(seed, MODULI, t)
        n = samples_per_scale
        A = rng.integers(0, spec.q, size=(n, spec.d))
        offsets = rng.integers(-t, t + 1, size=(n, spec.d))
        pivot = rng.integers(0, spec.d, size=n)
        offsets[np.arange(n), pivot] = rng.choice(np.array([-t, t]), size=n)
        B = np.mod(A + offsets, spec.q)
        dist = np.linalg.norm(fmap.eval_batch(A) - fmap.eval_batch(B), axis=1)
        lows.append(float(dist.min()))
        highs.append(float(dist.max()))
        counts.append(n)
    logger.debug("sampled moduli over %d scales", len(scales))
    return _finish("sampled", scales, lows, highs, counts)


def exhaustive_moduli(
    spec: SpaceSpec,
    fmap: EmbeddingMap,
    budget: int = DEFAULTS["budgets"]["max_pairs"],
) -> ModuliReport:
    """Moduli over every ordered pair of distinct points (tiny spaces only).

    Raises:
        BudgetExceededError: If (q^d)^2 > budget.
    """
    check_budget("ordered point pairs", spec.num_points**2, budget)
    P = point_array(spec, spec.num_points)
    F = fmap.eval_batch(P)
    scales = list(range(1, spec.q // 2 + 1))
    lows: list[float | None] = [None] * len(scales)
    highs: list[float | None] = [None] * len(scales)
    counts = [0] * len(scales)
    for i in range(len(P)):
        r = np.mod(P - P[i], spec.q)
        source = np.minimum(r, spec.q - r).max(axis=1)
        image = np.linalg.norm(F - F[i], axis=1)
        for k, t in enumerate(scales):
            mask = source == t
            if not mask.any():
                continue
            lo, hi = float(image[mask].min()), float(image[mask].max())
            lows[k] = lo if lows[k] is None else min(lows[k], lo)
            highs[k] = hi if highs[k] is None else max(highs[k], hi)
            counts[k] += int(mask.sum())
    return _finish("exhaustive", scales, lows, highs, counts)


def distortion_contradiction_scale(report: ModuliReport) -> int | None:
    """Smallest m with rho1Hat(2^m) > 2·√e·rho2Hat(1), or None.

    A coarsely uniform embedding of every space in the family would supply
    such an m; the averaging chain then forces a contradiction.
    """
    _, rho2_one = report.at(1)
    if rho2_one is None:
        return None
    threshold = 2 * math.sqrt(math.e) * rho2_one
    m = 0
    while 2**m in report.scales:
        rho1, _ = report.at(2**m)
        if rho1 is not None and rho1 > threshold:
            return m
        m += 1
    return None
