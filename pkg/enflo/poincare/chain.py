"""The averaging chain, orbit averages and the distortion certificate.

Summing the double-simplex inequality over the isometry orbit of one
double simplex at level m gives, for ANY map f,

    (p / (p - 1)) * ḡ_{m-1}  >=  ḡ_m

because the orbit covers every (m-1)-segment equally often as a connecting
line and every m-segment equally often as an edge. Iterating down to level
0 and comparing extremes with means bounds the ratio

    min |f(a) - f(b)| over L-segments  /  max |f(a) - f(b)| over 0-segments

by sqrt((p / (p - 1))^L), which stays below sqrt(e) when L = p - 1.
"""

import logging
import math
from collections import Counter
from fractions import Fraction

import numpy as np

from enflo.config import DEFAULTS
from enflo.embeddings import EmbeddingMap
from enflo.space import (
    SpaceSpec,
    count_segments_formula,
    double_simplex,
    flat_index,
    isometry_group,
)
from enflo.streams import ORBITS, derive_rng

from .means import class_statistics, exact_total, image_array, mean_table, sampled_squares
from .models import (
    CertificateReport,
    ChainLevel,
    ChainReport,
    Mode,
    Number,
    OrbitRegularity,
    OrbitReport,
    PoincareError,
)

logger = logging.getLogger(__name__)

LIMIT_BOUND = math.sqrt(math.e)

# Isometries transported per numpy batch in orbit checks.
_ORBIT_CHUNK = 1000


def chain_factor(p: int) -> Fraction:
    """1 + 1/(p-1) = p/(p-1)."""
    if p < 2:
        raise PoincareError(f"p must be >= 2, got {p}")
    return Fraction(p, p - 1)


def iterated_factor(p: int, L: int) -> Fraction:
    """(p/(p-1))^L, exactly."""
    return chain_factor(p) ** L


def e_bound_holds(p: int, tol: float = 1e-12) -> bool:
    """(1 + 1/(p-1))^(p-1) <= e, to within tol."""
    return float(iterated_factor(p, p - 1)) <= math.e + tol


def certificate_bound(p: int, L: int) -> float:
    """sqrt((p/(p-1))^L)."""
    return math.sqrt(iterated_factor(p, L))


def _within(slack: Number, scale: Number, rel_tol: float) -> bool:
    """slack >= 0 up to rel_tol relative to scale (exact values compare strictly)."""
    if isinstance(slack, float):
        return slack >= -rel_tol * max(abs(scale), 1.0)
    return slack >= 0


def chain_check(
    spec: SpaceSpec,
    fmap: EmbeddingMap,
    mode: Mode = Mode.exact,
    *,
    budget: int = DEFAULTS["budgets"]["max_points"],
    samples: int = DEFAULTS["sampling"]["samples"],
    seed: int = DEFAULTS["sampling"]["seed"],
    sigma_gate: float = DEFAULTS["sampling"]["sigma_gate"],
    rel_tol: float = DEFAULTS["sampling"]["rel_tol"],
) -> ChainReport:
    """Evaluate (p/(p-1))·ḡ_{m-1} >= ḡ_m for m = 1..L and the iterated form.

    Exact mode has zero tolerance; enumerated mode allows rel_tol; sampled
    mode passes a level unless the slack is below -sigma_gate standard
    errors.

    Raises:
        BudgetExceededError: If an enumerated mode exceeds the point budget.
        IrrationalMapError: If exact mode gets an irrational map.
    """
    table = mean_table(spec, fmap, mode, budget=budget, samples=samples, seed=seed)
    g = table.values
    exact_factor = chain_factor(spec.p)
    factor = exact_factor if mode is Mode.exact else float(exact_factor)

    levels = []
    for m in range(1, spec.L + 1):
        slack = factor * g[m - 1] - g[m]
        scale = max(abs(factor * g[m - 1]), abs(g[m]))
        sigma = None
        if mode is Mode.sampled:
            error = math.hypot(factor * table.stderrs[m - 1], table.stderrs[m])
            sigma = slack / error if error > 0 else None
            passed = slack >= -sigma_gate * error if error > 0 else _within(slack, scale, rel_tol)
        else:
            passed = _within(slack, scale, rel_tol)
        levels.append(ChainLevel(m, g[m - 1], g[m], slack, passed, sigma))

    total = iterated_factor(spec.p, spec.L)
    if mode is not Mode.exact:
        total = float(total)
    iterated_slack = total * g[0] - g[spec.L]
    e_bound = e_bound_holds(spec.p) if spec.L == spec.p - 1 else None
    verdict = "pass" if all(level.passed for level in levels) else "fail"
    logger.debug("chain on %s: %s", spec, verdict)
    return ChainReport(mode, table, levels, total, iterated_slack, verdict, e_bound)


def enflo_certificate(
    spec: SpaceSpec,
    fmap: EmbeddingMap,
    mode: Mode = Mode.exact,
    *,
    budget: int = DEFAULTS["budgets"]["max_points"],
    samples: int = DEFAULTS["sampling"]["samples"],
    seed: int = DEFAULTS["sampling"]["seed"],
    rel_tol: float = DEFAULTS["sampling"]["rel_tol"],
) -> CertificateReport:
    """Ratio of the smallest top-level image distance to the largest bottom-level one.

    Enumerated modes compare infTop² <= supBottom² · (p/(p-1))^L (exactly
    in exact mode). Sampled mode only sees sample extremes, which
    over-estimate the infimum and under-estimate the supremum, so its
    report is an illustration rather than a certificate.
    """
    bound = certificate_bound(spec.p, spec.L)
    factor = iterated_factor(spec.p, spec.L)
    note = ""
    if mode is Mode.sampled:
        top = float(sampled_squares(spec, fmap, spec.L, samples, seed).min())
        bottom = float(sampled_squares(spec, fmap, 0, samples, seed).max())
        note = "sample extremes; illustration only"
    else:
        exact = mode is Mode.exact
        images = image_array(spec, fmap, exact=exact, budget=budget)
        top = class_statistics(spec, spec.L, images, exact=exact).minimum
        bottom = class_statistics(spec, 0, images, exact=exact).maximum

    if bottom == 0:
        ratio = 0.0 if top == 0 else None
    else:
        ratio = math.sqrt(top / bottom)

    if mode is Mode.sampled:
        verdict = "illustration"
    elif bottom == 0 and top == 0:
        verdict = "degenerate"
        note = "every bottom-level and top-level segment collapses to a point"
    elif mode is Mode.exact:
        verdict = "pass" if top <= bottom * factor else "fail"
    else:
        verdict = "pass" if _within(bottom * float(factor) - top, top, rel_tol) else "fail"

    return CertificateReport(
        mode=mode,
        inf_top_sq=top,
        sup_bottom_sq=bottom,
        inf_top=math.sqrt(top),
        sup_bottom=math.sqrt(bottom),
        ratio=ratio,
        bound=bound,
        limit_bound=LIMIT_BOUND,
        verdict=verdict,
        note=note,
    )


def _simplex_rows(spec: SpaceSpec, m: int) -> np.ndarray:
    """Dense (2p, d) array: u_1..u_p then v_1..v_p of the level-m double simplex."""
    ds = double_simplex(spec, m)
    return np.array([point.coords for point in ds.u + ds.v], dtype=np.int64)


def _pair_indices(p: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Row pairs of edges (k < l on each side) and of connecting lines (u_k, v_l)."""
    edges = [(side + k, side + l) for side in (0, p) for k in range(p) for l in range(k + 1, p)]
    lines = [(k, p + l) for k in range(p) for l in range(p)]
    return edges, lines


def _transport_batch(
    X: np.ndarray, perms: np.ndarray, signs: np.ndarray, shifts: np.ndarray, q: int
) -> np.ndarray:
    """(n, 2p, d) images of the simplex rows under n isometries given as arrays."""
    gathered = X[:, perms]  # (2p, n, d)
    return np.mod(np.swapaxes(gathered, 0, 1) * signs[:, None, :] + shifts[:, None, :], q)


def orbit_regularity(
    spec: SpaceSpec, m: int, budget: int = DEFAULTS["budgets"]["max_group"]
) -> OrbitRegularity:
    """Count how often each ordered segment occurs in the full group orbit.

    Edges and connecting lines are counted in both orientations.

    Raises:
        BudgetExceededError: If the group exceeds budget.
        LevelOutOfRangeError: If m is outside [1, L].
    """
    spec.check_level(m, lowest=1)
    X = _simplex_rows(spec, m)
    edges, lines = _pair_indices(spec.p)
    edge_counts: Counter = Counter()
    line_counts: Counter = Counter()
    group_size = 0
    for perms, signs, shifts in _group_batches(spec, budget):
        Y = _transport_batch(X, perms, signs, shifts, spec.q)
        idx = flat_index(spec, Y)
        group_size += len(idx)
        for row in idx.tolist():
            for k, l in edges:
                edge_counts[row[k], row[l]] += 1
                edge_counts[row[l], row[k]] += 1
            for k, l in lines:
                line_counts[row[k], row[l]] += 1
                line_counts[row[l], row[k]] += 1
    return OrbitRegularity(
        level=m,
        group_size=group_size,
        edge_multiplicities=sorted(set(edge_counts.values())),
        line_multiplicities=sorted(set(line_counts.values())),
        edges_covered=len(edge_counts),
        lines_covered=len(line_counts),
        edge_class_size=count_segments_formula(spec, m),
        line_class_size=count_segments_formula(spec, m - 1),
    )


def _group_batches(spec: SpaceSpec, budget: int):
    """Every group element, as (perms, signs, shifts) arrays in chunks."""
    batch = []
    for h in isometry_group(spec, budget):
        batch.append(h)
        if len(batch) == _ORBIT_CHUNK:
            yield _as_arrays(batch)
            batch = []
    if batch:
        yield _as_arrays(batch)


def _as_arrays(isometries) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return (
        np.array([h.perm for h in isometries], dtype=np.int64),
        np.array([h.signs for h in isometries], dtype=np.int64),
        np.array([h.shifts for h in isometries], dtype=np.int64),
    )


def _random_batches(spec: SpaceSpec, count: int, rng: np.random.Generator):
    """``count`` uniform group elements, as arrays in chunks."""
    done = 0
    while done < count:
        n = min(_ORBIT_CHUNK, count - done)
        perms = rng.permuted(np.tile(np.arange(spec.d), (n, 1)), axis=1)
        signs = rng.choice(np.array([-1, 1]), size=(n, spec.d))
        shifts = rng.integers(0, spec.q, size=(n, spec.d))
        yield perms, signs, shifts
        done += n


def orbit_average_check(
    spec: SpaceSpec,
    m: int,
    fmap: EmbeddingMap,
    mode: Mode = Mode.exact,
    *,
    budget_group: int = DEFAULTS["budgets"]["max_group"],
    budget_points: int = DEFAULTS["budgets"]["max_points"],
    samples: int = DEFAULTS["sampling"]["samples"],
    seed: int = DEFAULTS["sampling"]["seed"],
    rel_tol: float = DEFAULTS["sampling"]["rel_tol"],
) -> OrbitReport:
    """Average the double-simplex inequality over the orbit of the level-m simplex.

    Enumerated modes walk the whole isometry group, check every transported
    simplex and compare the orbit means with the class means ḡ_{m-1} and
    ḡ_m. Sampled mode draws ``samples`` random isometries from the (3, m)
    stream and reports the means with standard errors.

    Raises:
        BudgetExceededError: If an enumerated mode exceeds a budget.
        IrrationalMapError: If exact mode gets an irrational map.
        LevelOutOfRangeError: If m is outside [1, L].
    """
    spec.check_level(m, lowest=1)
    p = spec.p
    X = _simplex_rows(spec, m)
    edges, lines = _pair_indices(p)
    e_left, e_right = (list(side) for side in zip(*edges))
    l_left, l_right = (list(side) for side in zip(*lines))
    ratio_bound = float(chain_factor(p))

    if mode is Mode.sampled:
        if samples < 2:
            raise PoincareError(f"sampled mode needs at least 2 isometries, got {samples}")
        rng = derive_rng(seed, ORBITS, m)
        line_values, edge_values, violations = [], [], 0
        for perms, signs, shifts in _random_batches(spec, samples, rng):
            Y = _transport_batch(X, perms, signs, shifts, spec.q)
            F = fmap.eval_batch(Y.reshape(-1, spec.d)).reshape(len(Y), 2 * p, -1)
            line_sums = ((F[:, l_left] - F[:, l_right]) ** 2).sum(axis=(1, 2))
            edge_sums = ((F[:, e_left] - F[:, e_right]) ** 2).sum(axis=(1, 2))
            floor = -rel_tol * np.maximum(line_sums, 1.0)
            violations += int(np.count_nonzero(line_sums - edge_sums < floor))
            line_values.append(line_sums / len(lines))
            edge_values.append(edge_sums / len(edges))
        line_all, edge_all = np.concatenate(line_values), np.concatenate(edge_values)
        line_mean, edge_mean = float(line_all.mean()), float(edge_all.mean())
        logger.debug("sampled orbit of %d isometries at level %d", samples, m)
        return OrbitReport(
            mode=mode,
            level=m,
            orbit_size=samples,
            line_mean=line_mean,
            edge_mean=edge_mean,
            class_line_mean=None,
            class_edge_mean=None,
            identity_holds=None,
            ratio=edge_mean / line_mean if line_mean > 0 else None,
            ratio_bound=ratio_bound,
            simplex_violations=violations,
            verdict="pass" if violations == 0 else "fail",
            line_stderr=float(line_all.std(ddof=1) / math.sqrt(samples)),
            edge_stderr=float(edge_all.std(ddof=1) / math.sqrt(samples)),
        )

    exact = mode is Mode.exact
    images = image_array(spec, fmap, exact=exact, budget=budget_points)
    line_total: Number = 0
    edge_total: Number = 0
    violations = 0
    group_size = 0
    for perms, signs, shifts in _group_batches(spec, budget_group):
        idx = flat_index(spec, _transport_batch(X, perms, signs, shifts, spec.q))
        F = images[idx]  # (n, 2p, D)
        line_sums = ((F[:, l_left] - F[:, l_right]) ** 2).sum(axis=(1, 2))
        edge_sums = ((F[:, e_left] - F[:, e_right]) ** 2).sum(axis=(1, 2))
        gaps = line_sums - edge_sums
        if exact:
            violations += sum(1 for gap in gaps.tolist() if gap < 0)
            line_total += exact_total(line_sums)
            edge_total += exact_total(edge_sums)
        else:
            violations += int(np.count_nonzero(gaps < -rel_tol * np.maximum(line_sums, 1.0)))
            line_total += float(line_sums.sum())
            edge_total += float(edge_sums.sum())
        group_size += len(idx)

    if exact:
        line_mean = Fraction(line_total, group_size * len(lines))
        edge_mean = Fraction(edge_total, group_size * len(edges))
    else:
        line_mean = line_total / (group_size * len(lines))
        edge_mean = edge_total / (group_size * len(edges))
    class_line = class_statistics(spec, m - 1, images, exact=exact).mean
    class_edge = class_statistics(spec, m, images, exact=exact).mean
    if exact:
        identity = line_mean == class_line and edge_mean == class_edge
    else:
        identity = all(
            math.isclose(found, expected, rel_tol=rel_tol, abs_tol=rel_tol)
            for found, expected in ((line_mean, class_line), (edge_mean, class_edge))
        )
    regularity = orbit_regularity(spec, m, budget_group)
    passed = violations == 0 and identity and regularity.regular
    logger.debug("orbit of %d isometries at level %d: identity %s", group_size, m, identity)
    return OrbitReport(
        mode=mode,
        level=m,
        orbit_size=group_size,
        line_mean=line_mean,
        edge_mean=edge_mean,
        class_line_mean=class_line,
        class_edge_mean=class_edge,
        identity_holds=identity,
        ratio=float(edge_mean / line_mean) if line_mean else None,
        ratio_bound=ratio_bound,
        simplex_violations=violations,
        verdict="pass" if passed else "fail",
        regularity=regularity,
    )

