"""Isometries built from coordinate permutations and cycle isometries.

The group acting here is the product of the symmetric group on the d
coordinates with d copies of the dihedral group of the q-cycle; it has
d! * (2q)^d elements and acts transitively on each segment class.
"""

import itertools
import logging
import math
from collections.abc import Iterator

import numpy as np

from enflo.config import DEFAULTS
from enflo.errors import check_budget
from enflo.streams import ISOMETRIES, derive_rng

from .metric import differences
from .models import (
    DimensionMismatchError,
    Isometry,
    Point,
    Segment,
    SegmentLevelError,
    SpaceSpec,
    SpecMismatchError,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_GROUP = DEFAULTS["budgets"]["max_group"]


def _check_same(h1: Isometry, h2: Isometry) -> None:
    if h1.q != h2.q or h1.d != h2.d:
        raise SpecMismatchError(
            f"isometries act on different spaces (q={h1.q}, d={h1.d}) vs (q={h2.q}, d={h2.d})"
        )


def apply_isometry(h: Isometry, point: Point) -> Point:
    """Image of a point: (h x)_i = signs[i] * x[perm[i]] + shifts[i] mod q."""
    if point.d != h.d:
        raise SpecMismatchError(f"isometry acts on d={h.d}, point has d={point.d}")
    x = point.coords
    return Point(
        (s * x[j] + t) % h.q for j, s, t in zip(h.perm, h.signs, h.shifts)
    )


def apply_array(h: Isometry, X: np.ndarray) -> np.ndarray:
    """Apply h to every row of an (n, d) residue array."""
    if X.shape[-1] != h.d:
        raise SpecMismatchError(f"isometry acts on d={h.d}, array has d={X.shape[-1]}")
    perm = np.asarray(h.perm)
    return np.mod(X[..., perm] * np.asarray(h.signs) + np.asarray(h.shifts), h.q)


def compose(h1: Isometry, h2: Isometry) -> Isometry:
    """The isometry x -> h1(h2(x))."""
    _check_same(h1, h2)
    perm = tuple(h2.perm[j] for j in h1.perm)
    signs = tuple(s1 * h2.signs[j] for j, s1 in zip(h1.perm, h1.signs))
    shifts = tuple(
        (s1 * h2.shifts[j] + t1) % h1.q
        for j, s1, t1 in zip(h1.perm, h1.signs, h1.shifts)
    )
    return Isometry(h1.q, perm, signs, shifts)


def invert(h: Isometry) -> Isometry:
    """The inverse isometry."""
    inverse = [0] * h.d
    for i, j in enumerate(h.perm):
        inverse[j] = i
    signs = tuple(h.signs[i] for i in inverse)
    shifts = tuple((-h.signs[i] * h.shifts[i]) % h.q for i in inverse)
    return Isometry(h.q, tuple(inverse), signs, shifts)


def apply_to_segment(h: Isometry, segment: Segment) -> Segment:
    """Image of a segment; levels are preserved by every group element."""
    return Segment(apply_isometry(h, segment.a), apply_isometry(h, segment.b), segment.level)


def transitive_isometry(spec: SpaceSpec, s1: Segment, s2: Segment) -> Isometry:
    """An isometry h with h(s1.a) = s2.a and h(s1.b) = s2.b.

    The permutation sends the differing coordinates of s2 onto those of s1
    (both in increasing order) and likewise for the agreeing coordinates;
    each coordinate then gets the cycle isometry matching its endpoints.

    Raises:
        SegmentLevelError: If either segment is unclassified or the levels differ.
    """
    if s1.level is None or s2.level is None:
        raise SegmentLevelError("transitive_isometry needs classified segments")
    if s1.level != s2.level:
        raise SegmentLevelError(f"levels differ: {s1.level} vs {s2.level}")
    for point in (s1.a, s1.b, s2.a, s2.b):
        spec.check_point(point)

    source = differences(spec, s1.a, s1.b)
    target = differences(spec, s2.a, s2.b)
    if len(source) != len(target):
        raise SegmentLevelError("segment supports differ in size; levels are mislabeled")

    perm = [0] * spec.d
    for i, j in zip(sorted(target), sorted(source)):
        perm[i] = j
    rest_target = [i for i in range(spec.d) if i not in target]
    rest_source = [j for j in range(spec.d) if j not in source]
    for i, j in zip(rest_target, rest_source):
        perm[i] = j

    a, a2 = s1.a.coords, s2.a.coords
    signs, shifts = [], []
    for i, j in enumerate(perm):
        # delta' = sign * delta with delta = ±step, so sign is +1 or -1
        sign = 1 if i not in target or target[i] == source[j] else -1
        signs.append(sign)
        shifts.append((a2[i] - sign * a[j]) % spec.q)
    return Isometry(spec.q, tuple(perm), tuple(signs), tuple(shifts))


def random_isometry(spec: SpaceSpec, seed: int) -> Isometry:
    """Uniform element of the group: random permutation, independent ±x + t per coordinate."""
    return _draw_isometry(spec, derive_rng(seed, ISOMETRIES))


def _draw_isometry(spec: SpaceSpec, rng: np.random.Generator) -> Isometry:
    perm = rng.permutation(spec.d)
    signs = rng.choice(np.array([-1, 1]), size=spec.d)
    shifts = rng.integers(0, spec.q, size=spec.d)
    return Isometry(spec.q, tuple(perm.tolist()), tuple(signs.tolist()), tuple(shifts.tolist()))


def isometry_group_size(spec: SpaceSpec) -> int:
    """d! * (2q)^d."""
    return math.factorial(spec.d) * (2 * spec.q) ** spec.d


def isometry_group(spec: SpaceSpec, budget: int = DEFAULT_MAX_GROUP) -> Iterator[Isometry]:
    """Every group element, permutations outermost.

    Raises:
        BudgetExceededError: If the group has more than budget elements.
    """
    check_budget("isometry group elements", isometry_group_size(spec), budget)
    logger.debug("listing %d isometries", isometry_group_size(spec))
    return _group_elements(spec)


def _group_elements(spec: SpaceSpec) -> Iterator[Isometry]:
    cycle_maps = [(s, t) for s in (1, -1) for t in range(spec.q)]
    for perm in itertools.permutations(range(spec.d)):
        for maps in itertools.product(cycle_maps, repeat=spec.d):
            yield Isometry(
                spec.q,
                perm,
                tuple(s for s, _ in maps),
                tuple(t for _, t in maps),
            )


def check_isometry_spec(spec: SpaceSpec, h: Isometry) -> None:
    """Raise unless h acts on this space."""
    if h.q != spec.q or h.d != spec.d:
        raise DimensionMismatchError(f"isometry (q={h.q}, d={h.d}) does not act on {spec}")
