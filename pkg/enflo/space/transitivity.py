"""Check that the isometry group moves any m-segment onto any other.

For each pair (s1, s2) the constructed isometry must send the endpoints of
s1 onto those of s2, its inverse must send them back, and the levels of a
fixed set of probe segments must survive the move.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from enflo.config import DEFAULTS
from enflo.errors import check_budget
from enflo.streams import PROBES, SEGMENTS, derive_rng

from .isometry import apply_array, invert, transitive_isometry
from .metric import sample_segment_arrays, segment_levels_array, segment_tuples
from .models import Point, Segment, SpaceSpec

logger = logging.getLogger(__name__)


@dataclass
class TransitivityReport:
    """Outcome of a transitivity check at one level.

    ``failures`` keeps up to ten offending pairs as (s1, s2, reason).
    """

    level: int
    pairs_checked: int
    probes: int
    sampled: bool
    endpoint_failures: int = 0
    probe_failures: int = 0
    failures: list[tuple[Segment, Segment, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.endpoint_failures and not self.probe_failures

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "level": self.level,
            "pairs_checked": self.pairs_checked,
            "probes": self.probes,
            "sampled": self.sampled,
            "endpoint_failures": self.endpoint_failures,
            "probe_failures": self.probe_failures,
            "failures": [
                {"s1": s1.to_dict(), "s2": s2.to_dict(), "reason": reason}
                for s1, s2, reason in self.failures
            ],
            "passed": self.passed,
        }


def probe_segments(
    spec: SpaceSpec, count: int, seed: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``count`` probe segments spread round-robin over the levels 0..L.

    Level l draws from the (7, l) stream.

    Returns:
        Start rows, end rows and the level of every probe.
    """
    if count < 1:
        raise ValueError(f"need at least one probe, got {count}")
    per_level = [len(range(m, count, spec.L + 1)) for m in spec.levels]
    starts, ends, levels = [], [], []
    for m, n in zip(spec.levels, per_level):
        if not n:
            continue
        A, B = sample_segment_arrays(spec, m, n, derive_rng(seed, PROBES, m))
        starts.append(A)
        ends.append(B)
        levels.append(np.full(n, m, dtype=np.int64))
    return np.vstack(starts), np.vstack(ends), np.concatenate(levels)


def _segment(a: np.ndarray, b: np.ndarray, m: int) -> Segment:
    return Segment(Point(a.tolist()), Point(b.tolist()), m)


def transitivity_check(
    spec: SpaceSpec,
    m: int,
    *,
    pairs: int | None = None,
    probes: int = 50,
    seed: int = DEFAULTS["sampling"]["seed"],
    budget_points: int = DEFAULTS["budgets"]["max_points"],
    budget_pairs: int = DEFAULTS["budgets"]["max_pairs"],
) -> TransitivityReport:
    """Build transitive_isometry(s1, s2) for pairs of m-segments and test it.

    With ``pairs`` None every unordered pair {s1, s2} of ordered m-segments
    is visited once; h covers s1 -> s2 and its inverse covers s2 -> s1.
    Otherwise ``pairs`` random pairs are drawn from the (1, m) stream.

    Raises:
        LevelOutOfRangeError: If m is outside [0, L].
        BudgetExceededError: If exhaustive enumeration exceeds a budget.
    """
    spec.check_level(m)
    PA, PB, probe_levels = probe_segments(spec, probes, seed)

    if pairs is None:
        rows = list(segment_tuples(spec, m, budget_points))
        n = len(rows)
        check_budget("segment pairs", n * (n + 1) // 2, budget_pairs)
        A = np.array([a for a, _ in rows], dtype=np.int64)
        B = np.array([b for _, b in rows], dtype=np.int64)
        index_pairs = ((i, j) for i in range(n) for j in range(i, n))
        first, second = (A, B), (A, B)
        total = n * (n + 1) // 2
    else:
        rng = derive_rng(seed, SEGMENTS, m)
        first = sample_segment_arrays(spec, m, pairs, rng)
        second = sample_segment_arrays(spec, m, pairs, rng)
        index_pairs = ((i, i) for i in range(pairs))
        total = pairs

    report = TransitivityReport(m, total, len(probe_levels), pairs is not None)
    for i, j in index_pairs:
        s1 = _segment(first[0][i], first[1][i], m)
        s2 = _segment(second[0][j], second[1][j], m)
        h = transitive_isometry(spec, s1, s2)
        source = np.stack([first[0][i], first[1][i]])
        target = np.stack([second[0][j], second[1][j]])
        reason = None
        if not np.array_equal(apply_array(h, source), target):
            reason = "endpoints"
        elif not np.array_equal(apply_array(invert(h), target), source):
            reason = "inverse endpoints"
        if reason:
            report.endpoint_failures += 1
        else:
            moved = segment_levels_array(spec, apply_array(h, PA), apply_array(h, PB))
            if not np.array_equal(moved, probe_levels):
                reason = "probe levels"
                report.probe_failures += 1
        if reason and len(report.failures) < 10:
            report.failures.append((s1, s2, reason))
    logger.debug("transitivity at level %d: %d pairs, passed=%s", m, total, report.passed)
    return report
