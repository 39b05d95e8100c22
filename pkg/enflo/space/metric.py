"""Metric, segment classification, sampling and enumeration.

The cycle Z/q carries the cyclic distance min(r, q - r) with
r = |x - y| mod q; the space carries the max over coordinates.
An m-segment is an ordered pair differing in exactly support(m)
coordinates, each by cyclic distance step(m) = 2^m.
"""

import itertools
import logging
import math
from collections.abc import Iterator

import numpy as np

from enflo.config import DEFAULTS
from enflo.errors import check_budget
from enflo.streams import SEGMENTS, derive_rng

from .models import (
    DimensionMismatchError,
    LevelOutOfRangeError,
    Point,
    Segment,
    SpaceSpec,
    SpaceSpecError,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_POINTS = DEFAULTS["budgets"]["max_points"]


def make_space_spec(n: int) -> SpaceSpec:
    """Default-family space for parameter n: q = 2^(n+1), d = 2n^n, p = n, L = n-1.

    Raises:
        SpaceSpecError: If n < 2.
    """
    if n < 2:
        raise SpaceSpecError(f"n must be >= 2, got {n} (L = n - 1 would be {n - 1})")
    return SpaceSpec(q=2 ** (n + 1), d=2 * n**n, p=n, L=n - 1)


def make_custom_spec(q: int, d: int, p: int, L: int) -> SpaceSpec:
    """Desk-scale space with decoupled parameters.

    Raises:
        DivisibilityError, SupportParityError, StepTooLargeError,
        SpaceSpecError: Per failed invariant.
    """
    return SpaceSpec(q=q, d=d, p=p, L=L)


def cyclic_distance(x: int, y: int, q: int) -> int:
    """Distance on the cycle Z/q."""
    r = (x - y) % q
    return min(r, q - r)


def _check_pair(spec: SpaceSpec, a: Point, b: Point) -> None:
    if a.d != spec.d or b.d != spec.d:
        raise DimensionMismatchError(
            f"points have {a.d} and {b.d} coordinates, space has d={spec.d}"
        )


def differences(spec: SpaceSpec, a: Point, b: Point) -> dict[int, int]:
    """Signed differences (b_i - a_i) mod q at the coordinates where a and b differ.

    Uses the sparse representation when both points are sparse, so full-scale
    points with few nonzeros never get expanded.
    """
    _check_pair(spec, a, b)
    if a.is_sparse and b.is_sparse:
        left, right = dict(a.nonzero), dict(b.nonzero)
        indices = left.keys() | right.keys()
        pairs = ((i, left.get(i, 0), right.get(i, 0)) for i in indices)
    else:
        pairs = zip(range(spec.d), a.coords, b.coords)
    return {i: (y - x) % spec.q for i, x, y in pairs if (y - x) % spec.q}


def distance(spec: SpaceSpec, a: Point, b: Point) -> int:
    """Max over coordinates of the cyclic distance; a value in [0, q/2]."""
    diffs = differences(spec, a, b)
    return max((min(r, spec.q - r) for r in diffs.values()), default=0)


def segment_level(spec: SpaceSpec, a: Point, b: Point) -> int | None:
    """Level m of the ordered pair (a, b), or None if it is no segment.

    Supports are strictly decreasing in m, so at most one level matches.
    """
    diffs = differences(spec, a, b)
    for m in spec.levels:
        if len(diffs) == spec.support(m):
            step = spec.step(m)
            if all(min(r, spec.q - r) == step for r in diffs.values()):
                return m
            return None
    return None


def segment_levels_array(spec: SpaceSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Vectorized segment_level over rows of two (n, d) residue arrays.

    Returns:
        Integer array of levels, -1 where a row pair is no segment.
    """
    r = np.mod(B - A, spec.q)
    cyc = np.minimum(r, spec.q - r)
    support = np.count_nonzero(cyc, axis=1)
    levels = np.full(len(A), -1, dtype=np.int64)
    for m in spec.levels:
        step = spec.step(m)
        ok = (support == spec.support(m)) & np.all((cyc == 0) | (cyc == step), axis=1)
        levels[ok] = m
    return levels


def canonical_segment(spec: SpaceSpec, m: int) -> Segment:
    """a = origin, b = step(m) on the first support(m) coordinates."""
    spec.check_level(m)
    b = spec.sparse_point({i: spec.step(m) for i in range(spec.support(m))})
    return Segment(spec.origin(), b, m)


def sample_segment_arrays(
    spec: SpaceSpec, m: int, count: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``count`` uniform ordered m-segments as two (count, d) arrays.

    Base point uniform, support a uniform subset of size support(m), and
    independent ±step(m) offsets; with step(m) < q/2 this is the uniform
    law on ordered m-segments.
    """
    spec.check_level(m)
    support, step = spec.support(m), spec.step(m)
    A = rng.integers(0, spec.q, size=(count, spec.d))
    chosen = np.argsort(rng.random((count, spec.d)), axis=1)[:, :support]
    signs = rng.choice(np.array([-1, 1]), size=(count, support))
    offsets = np.zeros((count, spec.d), dtype=np.int64)
    np.put_along_axis(offsets, chosen, signs * step, axis=1)
    return A, np.mod(A + offsets, spec.q)


def random_segment(spec: SpaceSpec, m: int, seed: int) -> Segment:
    """One uniform m-segment, deterministic in seed."""
    A, B = sample_segment_arrays(spec, m, 1, derive_rng(seed, SEGMENTS, m))
    return Segment(Point(A[0].tolist()), Point(B[0].tolist()), m)


def count_segments_formula(spec: SpaceSpec, m: int) -> int:
    """Number of ordered m-segments: q^d * C(d, support(m)) * 2^support(m).

    Raises:
        SpaceSpecError: If step(m) == q/2 (then +step and -step coincide).
    """
    spec.check_level(m)
    if 2 * spec.step(m) == spec.q:
        raise SpaceSpecError(f"step({m}) equals q/2; segment offsets are not distinct")
    support = spec.support(m)
    return spec.num_points * math.comb(spec.d, support) * 2**support


def point_array(spec: SpaceSpec, budget: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """Every point as a row of a (q^d, d) array; row i is the point with flat index i.

    Raises:
        BudgetExceededError: If q^d > budget.
    """
    check_budget("points in space", spec.num_points, budget)
    shape = (spec.q,) * spec.d
    return np.array(np.unravel_index(np.arange(spec.num_points), shape)).T


def flat_index(spec: SpaceSpec, X: np.ndarray) -> np.ndarray:
    """Row indices into point_array for every row of a residue array."""
    return np.ravel_multi_index(tuple(np.moveaxis(np.asarray(X), -1, 0)), (spec.q,) * spec.d)


def enumerate_points(spec: SpaceSpec, budget: int = DEFAULT_MAX_POINTS) -> Iterator[Point]:
    """Every point of the space in lexicographic order.

    Raises:
        BudgetExceededError: If q^d > budget.
    """
    check_budget("points in space", spec.num_points, budget)
    return (Point(coords) for coords in itertools.product(range(spec.q), repeat=spec.d))


def segment_offsets(spec: SpaceSpec, m: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All offset patterns (indices, deltas) of an m-segment, deltas = ±step(m)."""
    spec.check_level(m)
    step = spec.step(m)
    patterns = []
    for indices in itertools.combinations(range(spec.d), spec.support(m)):
        for signs in itertools.product((step, -step), repeat=len(indices)):
            patterns.append((indices, signs))
    return patterns


def segment_tuples(
    spec: SpaceSpec, m: int, budget: int = DEFAULT_MAX_POINTS
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every ordered m-segment as a pair of dense coordinate tuples.

    Order: points lexicographically, then supports lexicographically, then
    sign patterns with + before -.
    """
    check_budget("points in space", spec.num_points, budget)
    offsets = segment_offsets(spec, m)
    logger.debug("enumerating %d x %d level-%d segments", spec.num_points, len(offsets), m)
    return _offset_pairs(spec.q, spec.d, offsets)


def _offset_pairs(
    q: int, d: int, offsets: list
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    for a in itertools.product(range(q), repeat=d):
        for indices, deltas in offsets:
            b = list(a)
            for i, delta in zip(indices, deltas):
                b[i] = (b[i] + delta) % q
            yield a, tuple(b)


def enumerate_segments(
    spec: SpaceSpec, m: int, budget: int = DEFAULT_MAX_POINTS
) -> Iterator[Segment]:
    """Every ordered m-segment exactly once.

    Raises:
        LevelOutOfRangeError: If m is outside [0, L].
        BudgetExceededError: If q^d > budget.
    """
    spec.check_level(m)
    return (Segment(Point(a), Point(b), m) for a, b in segment_tuples(spec, m, budget))


def default_family_table(n_max: int) -> list[dict]:
    """Full-scale numbers of the default family for n = 2..n_max.

    Each row: n, q, d, p, L, supports, the iterated chain factor
    (n/(n-1))^(n-1) and the certificate bound (n/(n-1))^((n-1)/2).
    """
    if n_max < 2:
        raise LevelOutOfRangeError(f"n_max must be >= 2, got {n_max}")
    rows = []
    for n in range(2, n_max + 1):
        spec = make_space_spec(n)
        factor = (n / (n - 1)) ** (n - 1)
        rows.append(
            {
                "n": n,
                "q": spec.q,
                "d": spec.d,
                "p": spec.p,
                "L": spec.L,
                "supports": [spec.support(m) for m in spec.levels],
                "iterated_factor": factor,
                "certificate_bound": math.sqrt(factor),
            }
        )
    return rows
