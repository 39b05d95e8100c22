"""Data models for the Poincaré-type inequality and the averaging chain.

Numbers are exact (int or Fraction) in exact mode and floats otherwise.
to_dict() writes exact numbers as strings ("14", "3/2") and leaves floats
and counts as JSON numbers.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from enflo.errors import EnfloError

Number = int | Fraction | float


def exact_number(value):
    """Exact numbers as strings; floats and None pass through."""
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return str(value)
    return value


class PoincareError(EnfloError):
    """Invalid input to an inequality or averaging check."""

    pass


class Mode(str, Enum):
    """How class means are computed."""

    exact = "exact"  # full enumeration, rational arithmetic
    enumerated = "enumerated"  # full enumeration, floating point
    sampled = "sampled"  # Monte-Carlo over random segments / isometries


@dataclass(frozen=True)
class EuclideanConfig:
    """A double simplex placed in R^D: p points u and p points v."""

    u: tuple[tuple[Number, ...], ...]
    v: tuple[tuple[Number, ...], ...]

    def __post_init__(self):
        if len(self.u) != len(self.v):
            raise PoincareError(f"u has {len(self.u)} points, v has {len(self.v)}")
        if len(self.u) < 2:
            raise PoincareError(f"a double simplex needs p >= 2 points per side, got {len(self.u)}")
        dims = {len(point) for point in self.u + self.v}
        if len(dims) != 1:
            raise PoincareError(f"points have different dimensions: {sorted(dims)}")

    @property
    def p(self) -> int:
        return len(self.u)

    @property
    def dim(self) -> int:
        return len(self.u[0])

    @property
    def is_exact(self) -> bool:
        return all(
            isinstance(x, (int, Fraction)) for point in self.u + self.v for x in point
        )


@dataclass
class GapResult:
    """Connecting-line and edge sums of squares, their gap and the closed-form witness."""

    sum_c: Number
    sum_s: Number
    gap: Number
    witness: Number
    exact: bool
    identity_holds: bool

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "sum_c": exact_number(self.sum_c),
            "sum_s": exact_number(self.sum_s),
            "gap": exact_number(self.gap),
            "witness": exact_number(self.witness),
            "exact": self.exact,
            "identity_holds": self.identity_holds,
        }


@dataclass
class SampledMean:
    """Monte-Carlo estimate of a class mean."""

    estimate: float
    stderr: float
    samples: int


@dataclass
class MeanTable:
    """Class means ḡ_0..ḡ_L of squared image distances.

    ``stderrs`` is None outside sampled mode; ``samples`` holds the number
    of segments behind each entry (the full class size when enumerated).
    """

    mode: Mode
    values: list[Number]
    samples: list[int]
    stderrs: list[float] | None = None

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "mode": self.mode.value,
            "values": [exact_number(value) for value in self.values],
            "stderrs": self.stderrs,
            "samples": self.samples,
        }

    def csv_rows(self) -> list[list]:
        """Rows of (level, mean, stderr, samples)."""
        return [
            [
                m,
                value,
                "" if self.stderrs is None else self.stderrs[m],
                self.samples[m],
            ]
            for m, value in enumerate(self.values)
        ]


@dataclass
class ChainLevel:
    """One step (p/(p-1))·ḡ_{m-1} >= ḡ_m of the chain."""

    level: int
    lower: Number
    upper: Number
    slack: Number
    passed: bool
    slack_sigma: float | None = None

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "level": self.level,
            "g_prev": exact_number(self.lower),
            "g": exact_number(self.upper),
            "slack": exact_number(self.slack),
            "slack_sigma": self.slack_sigma,
            "passed": self.passed,
        }


@dataclass
class ChainReport:
    """Chain inequalities at every level plus the iterated form.

    ``e_bound`` is set only when L = p - 1 (the make_space_spec family), where
    the iterated factor (1 + 1/(p-1))^(p-1) stays below e.
    """

    mode: Mode
    table: MeanTable
    levels: list[ChainLevel]
    iterated_factor: Number
    iterated_slack: Number
    verdict: str
    e_bound: bool | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "mode": self.mode.value,
            "table": self.table.to_dict(),
            "levels": [level.to_dict() for level in self.levels],
            "iterated_factor": exact_number(self.iterated_factor),
            "iterated_slack": exact_number(self.iterated_slack),
            "e_bound": self.e_bound,
            "verdict": self.verdict,
        }


@dataclass
class CertificateReport:
    """Enflo ratio infTop / supBottom against the bound sqrt((p/(p-1))^L).

    Squared extremes are kept exact in exact mode; square roots appear only
    in the float fields.
    """

    mode: Mode
    inf_top_sq: Number
    sup_bottom_sq: Number
    inf_top: float
    sup_bottom: float
    ratio: float | None
    bound: float
    limit_bound: float
    verdict: str
    note: str = ""

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "mode": self.mode.value,
            "inf_top_sq": exact_number(self.inf_top_sq),
            "sup_bottom_sq": exact_number(self.sup_bottom_sq),
            "inf_top": self.inf_top,
            "sup_bottom": self.sup_bottom,
            "ratio": self.ratio,
            "bound": self.bound,
            "limit_bound": self.limit_bound,
            "verdict": self.verdict,
            "note": self.note,
        }


@dataclass
class OrbitRegularity:
    """How often each ordered segment appears in the orbit of a double simplex."""

    level: int
    group_size: int
    edge_multiplicities: list[int]
    line_multiplicities: list[int]
    edges_covered: int
    lines_covered: int
    edge_class_size: int
    line_class_size: int

    @property
    def regular(self) -> bool:
        return (
            len(self.edge_multiplicities) == 1
            and len(self.line_multiplicities) == 1
            and self.edges_covered == self.edge_class_size
            and self.lines_covered == self.line_class_size
        )

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "level": self.level,
            "group_size": self.group_size,
            "edge_multiplicities": self.edge_multiplicities,
            "line_multiplicities": self.line_multiplicities,
            "edges_covered": self.edges_covered,
            "lines_covered": self.lines_covered,
            "edge_class_size": self.edge_class_size,
            "line_class_size": self.line_class_size,
            "regular": self.regular,
        }


@dataclass
class OrbitReport:
    """Orbit averages of squared edge and connecting-line lengths.

    ``line_mean`` averages over p^2 lines per simplex and ``edge_mean`` over
    p(p-1) edges per simplex. In enumerated modes they are compared with the
    class means ḡ_{m-1} and ḡ_m.
    """

    mode: Mode
    level: int
    orbit_size: int
    line_mean: Number
    edge_mean: Number
    class_line_mean: Number | None
    class_edge_mean: Number | None
    identity_holds: bool | None
    ratio: float | None
    ratio_bound: float
    simplex_violations: int
    verdict: str
    line_stderr: float | None = None
    edge_stderr: float | None = None
    regularity: OrbitRegularity | None = None

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "mode": self.mode.value,
            "level": self.level,
            "orbit_size": self.orbit_size,
            "line_mean": exact_number(self.line_mean),
            "edge_mean": exact_number(self.edge_mean),
            "line_stderr": self.line_stderr,
            "edge_stderr": self.edge_stderr,
            "class_line_mean": exact_number(self.class_line_mean),
            "class_edge_mean": exact_number(self.class_edge_mean),
            "identity_holds": self.identity_holds,
            "ratio": self.ratio,
            "ratio_bound": self.ratio_bound,
            "simplex_violations": self.simplex_violations,
            "regularity": self.regularity.to_dict() if self.regularity else None,
            "verdict": self.verdict,
        }
