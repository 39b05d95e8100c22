"""Double simplices whose edges are m-segments and connecting lines (m-1)-segments.

With s = support(m) and |I_m| = p*s/2, the index set I_m = {0..|I_m|-1}
is split into blocks J_1..J_p. For even s these are consecutive blocks of
size s/2; for p = 2 and odd s the split is J_1 = I_m, J_2 = {} (the two
patterns still differ in exactly s coordinates). Then

    (u_k)_i = 2^m on J_k,           2^(m-1) on I_m + |I_m|,  0 elsewhere
    (v_k)_i = 2^m on J_k + |I_m|,   2^(m-1) on I_m,          0 elsewhere
"""

from dataclasses import dataclass

from .isometry import apply_isometry, check_isometry_spec
from .metric import segment_level
from .models import DoubleSimplex, Isometry, SpaceSpec


@dataclass
class SimplexReport:
    """Result of checking a double simplex.

    ``violation`` names the first offending pair as (kind, k, l, found
    level) with kind "edge-u", "edge-v" or "line".
    """

    level: int
    passed: bool
    pairs_checked: int
    violation: tuple[str, int, int, int | None] | None = None

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        result = {
            "level": self.level,
            "passed": self.passed,
            "pairs_checked": self.pairs_checked,
        }
        if self.violation:
            kind, k, l, found = self.violation
            result["violation"] = {"kind": kind, "k": k, "l": l, "found_level": found}
        return result


def simplex_blocks(spec: SpaceSpec, m: int) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """I_m and its split J_1..J_p (zero-based)."""
    spec.check_level(m, lowest=1)
    support = spec.support(m)
    if support % 2 == 0:
        half = support // 2
        size = spec.p * half
        blocks = tuple(tuple(range(k * half, (k + 1) * half)) for k in range(spec.p))
    else:
        # SpaceSpec only admits odd supports for p = 2
        size = support
        blocks = (tuple(range(support)), ())
    return tuple(range(size)), blocks


def double_simplex(spec: SpaceSpec, m: int) -> DoubleSimplex:
    """Explicit double simplex at level m (1 <= m <= L).

    Points are sparse: at full scale most coordinates are zero.

    Raises:
        LevelOutOfRangeError: If m is outside [1, L].
    """
    index_set, blocks = simplex_blocks(spec, m)
    size = len(index_set)
    high, low = spec.step(m), spec.step(m - 1)
    upper_half = {i + size: low for i in index_set}
    lower_half = {i: low for i in index_set}

    u, v = [], []
    for block in blocks:
        u.append(spec.sparse_point({**upper_half, **{i: high for i in block}}))
        v.append(spec.sparse_point({**lower_half, **{i + size: high for i in block}}))
    return DoubleSimplex(tuple(u), tuple(v), m, index_set, blocks)


def verify_double_simplex(spec: SpaceSpec, ds: DoubleSimplex) -> SimplexReport:
    """Check every edge is an m-segment and every connecting line an (m-1)-segment.

    Never raises on a failed check; the first violation is reported.
    """
    m = ds.level
    checked = 0
    for side, k, l, first, second in ds.edges():
        checked += 1
        found = segment_level(spec, first, second)
        if found != m:
            return SimplexReport(m, False, checked, (f"edge-{side}", k, l, found))
    for k, l, uk, vl in ds.connecting_lines():
        checked += 1
        found = segment_level(spec, uk, vl)
        if found != m - 1:
            return SimplexReport(m, False, checked, ("line", k, l, found))
    return SimplexReport(m, True, checked)


def transported_double_simplex(spec: SpaceSpec, h: Isometry, ds: DoubleSimplex) -> DoubleSimplex:
    """Image of a double simplex under an isometry (blueprint dropped)."""
    check_isometry_spec(spec, h)
    return DoubleSimplex(
        tuple(apply_isometry(h, point) for point in ds.u),
        tuple(apply_isometry(h, point) for point in ds.v),
        ds.level,
    )
