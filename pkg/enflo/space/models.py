"""Data models for modified Enflo spaces.

A modified Enflo space is the product of d copies of the cycle Z/q with
the max metric. SpaceSpec carries the parameters, Point a vector of
residues, Segment an ordered pair of points with its level, Isometry an
element of the coordinate-permutation by cycle-isometry group, and
DoubleSimplex the 2p-point configuration used by the averaging argument.
"""

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass

from enflo.errors import EnfloError


class SpaceSpecError(EnfloError):
    """Invalid space parameters."""

    pass


class DivisibilityError(SpaceSpecError):
    """d is not divisible by p^L."""

    pass


class SupportParityError(SpaceSpecError):
    """A segment support is odd where the double simplex needs it even."""

    pass


class StepTooLargeError(SpaceSpecError):
    """step(L) = 2^L is not below q/2."""

    pass


class DimensionMismatchError(EnfloError):
    """A point does not have the dimension of its space."""

    pass


class LevelOutOfRangeError(EnfloError):
    """A segment level outside [0, L] (or [1, L] for double simplices)."""

    pass


class SegmentLevelError(EnfloError):
    """Segments are unclassified or sit at different levels."""

    pass


class SpecMismatchError(EnfloError):
    """Objects built for different spaces were combined."""

    pass


@dataclass(frozen=True)
class SpaceSpec:
    """Parameters of a (generalized) modified Enflo space.

    Construction validates every invariant, so a SpaceSpec in hand is
    always usable for segments and double simplices.

    Attributes:
        q: Cycle length (even, at least 4).
        d: Number of coordinates.
        p: Branching parameter; support(m) = d / p^m.
        L: Number of segment levels above 0.
    """

    q: int
    d: int
    p: int
    L: int

    def __post_init__(self):
        if self.q < 4 or self.q % 2:
            raise SpaceSpecError(f"q must be an even integer >= 4, got {self.q}")
        if self.d < 1:
            raise SpaceSpecError(f"d must be >= 1, got {self.d}")
        if self.p < 2:
            raise SpaceSpecError(f"p must be >= 2, got {self.p}")
        if self.L < 1:
            raise SpaceSpecError(f"L must be >= 1, got {self.L}")
        if self.d % self.p**self.L:
            raise DivisibilityError(
                f"d={self.d} is not divisible by p^L={self.p**self.L}"
            )
        # Three pairwise-equidistant 0/1 patterns force an even distance,
        # so only p = 2 tolerates odd supports.
        if self.p > 2:
            for m in range(1, self.L + 1):
                if self.support(m) % 2:
                    raise SupportParityError(
                        f"support({m})={self.support(m)} is odd; p={self.p} needs it even"
                    )
        if 2 * self.step(self.L) >= self.q:
            raise StepTooLargeError(
                f"step(L)={self.step(self.L)} must be below q/2={self.q // 2}"
            )

    def support(self, m: int) -> int:
        """Number of differing coordinates of an m-segment."""
        self.check_level(m)
        return self.d // self.p**m

    def step(self, m: int) -> int:
        """Cyclic difference of an m-segment in each differing coordinate."""
        return 2**m

    @property
    def levels(self) -> range:
        """Segment levels 0..L."""
        return range(self.L + 1)

    @property
    def num_points(self) -> int:
        """Cardinality q^d of the space."""
        return self.q**self.d

    def check_level(self, m: int, *, lowest: int = 0) -> None:
        """Raise LevelOutOfRangeError unless lowest <= m <= L."""
        if not lowest <= m <= self.L:
            raise LevelOutOfRangeError(
                f"level {m} outside [{lowest}, {self.L}] for {self}"
            )

    def check_point(self, point: "Point") -> None:
        """Raise DimensionMismatchError unless point has d coordinates in [0, q)."""
        if point.d != self.d:
            raise DimensionMismatchError(
                f"point has {point.d} coordinates, space has d={self.d}"
            )
        if any(not 0 <= value < self.q for _, value in point.nonzero):
            raise DimensionMismatchError(f"point {point} has residues outside [0, {self.q})")

    def point(self, coords: Iterable[int]) -> "Point":
        """Dense point with every coordinate reduced modulo q."""
        point = Point(c % self.q for c in coords)
        if point.d != self.d:
            raise DimensionMismatchError(
                f"point has {point.d} coordinates, space has d={self.d}"
            )
        return point

    def sparse_point(self, nonzero: Mapping[int, int]) -> "Point":
        """Sparse point from {index: value}; values are reduced modulo q."""
        return Point.sparse(self.d, {i: v % self.q for i, v in nonzero.items()})

    def origin(self) -> "Point":
        """The all-zeros point (the wedge basepoint)."""
        return Point.sparse(self.d, {})

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "q": self.q,
            "d": self.d,
            "p": self.p,
            "L": self.L,
            "supports": [self.support(m) for m in self.levels],
            "steps": [self.step(m) for m in self.levels],
        }

    def __str__(self) -> str:
        return f"SpaceSpec(q={self.q}, d={self.d}, p={self.p}, L={self.L})"


class Point:
    """A point of a modified Enflo space.

    Stored either densely (a tuple of d residues) or sparsely (sorted
    nonzero ``(index, value)`` pairs). Equality and hashing are by value,
    so a dense and a sparse point with the same coordinates are equal.
    Residues are reduced by SpaceSpec.point / sparse_point, not here.
    """

    __slots__ = ("_d", "_coords", "_nonzero")

    def __init__(self, coords: Iterable[int]):
        self._coords = tuple(int(c) for c in coords)
        self._d = len(self._coords)
        self._nonzero: tuple[tuple[int, int], ...] | None = None

    @classmethod
    def sparse(cls, d: int, nonzero: Mapping[int, int]) -> "Point":
        """Build a point from its nonzero coordinates.

        Args:
            d: Dimension.
            nonzero: Mapping index -> value; zero values are dropped.

        Raises:
            DimensionMismatchError: If an index is outside [0, d).
        """
        if any(not 0 <= i < d for i in nonzero):
            raise DimensionMismatchError(f"sparse indices must lie in [0, {d})")
        point = object.__new__(cls)
        point._d = d
        point._coords = None
        point._nonzero = tuple(sorted((i, int(v)) for i, v in nonzero.items() if v))
        return point

    @property
    def d(self) -> int:
        return self._d

    @property
    def is_sparse(self) -> bool:
        return self._coords is None

    @property
    def coords(self) -> tuple[int, ...]:
        """Dense coordinate tuple (materialized on first use)."""
        if self._coords is None:
            coords = [0] * self._d
            for i, value in self._nonzero:
                coords[i] = value
            self._coords = tuple(coords)
        return self._coords

    @property
    def nonzero(self) -> tuple[tuple[int, int], ...]:
        """Sorted ``(index, value)`` pairs of nonzero coordinates."""
        if self._nonzero is None:
            self._nonzero = tuple((i, v) for i, v in enumerate(self._coords) if v)
        return self._nonzero

    def __getitem__(self, i: int) -> int:
        if self._coords is not None:
            return self._coords[i]
        return dict(self._nonzero).get(i, 0)

    def __len__(self) -> int:
        return self._d

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        if self._coords is not None and other._coords is not None:
            return self._coords == other._coords
        return self._d == other._d and self.nonzero == other.nonzero

    def __hash__(self) -> int:
        return hash((self._d, self.nonzero))

    def __repr__(self) -> str:
        if self._coords is None:
            return f"Point.sparse({self._d}, {dict(self._nonzero)})"
        return f"Point({self._coords})"

    def to_list(self) -> list[int]:
        """Dense JSON-ready list of coordinates."""
        return list(self.coords)


@dataclass(frozen=True)
class Segment:
    """An ordered pair of points; level is None when unclassified."""

    a: Point
    b: Point
    level: int | None = None

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {"a": self.a.to_list(), "b": self.b.to_list(), "level": self.level}


@dataclass(frozen=True)
class Isometry:
    """x -> y with y_i = signs[i] * x[perm[i]] + shifts[i] (mod q).

    ``perm[i]`` is the source coordinate feeding target coordinate i; each
    coordinate then goes through a cycle isometry x -> ±x + t.
    """

    q: int
    perm: tuple[int, ...]
    signs: tuple[int, ...]
    shifts: tuple[int, ...]

    def __post_init__(self):
        d = len(self.perm)
        if len(self.signs) != d or len(self.shifts) != d:
            raise DimensionMismatchError("perm, signs and shifts must have equal length")
        if sorted(self.perm) != list(range(d)):
            raise ValueError(f"perm is not a permutation of 0..{d - 1}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def identity(cls, spec: SpaceSpec) -> "Isometry":
        return cls(spec.q, tuple(range(spec.d)), (1,) * spec.d, (0,) * spec.d)

    @property
    def d(self) -> int:
        return len(self.perm)

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "perm": list(self.perm),
            "signs": list(self.signs),
            "shifts": list(self.shifts),
        }


@dataclass(frozen=True)
class DoubleSimplex:
    """Points u_1..u_p, v_1..v_p at a level m >= 1.

    Edges are (u_k, u_l) and (v_k, v_l) for k < l; connecting lines are
    (u_k, v_l) for all k, l. ``index_set`` is I_m and ``blocks`` the parts
    J_k of I_m used to build the points (zero-based coordinates).
    """

    u: tuple[Point, ...]
    v: tuple[Point, ...]
    level: int
    index_set: tuple[int, ...] = ()
    blocks: tuple[tuple[int, ...], ...] = ()

    @property
    def p(self) -> int:
        return len(self.u)

    def edges(self) -> list[tuple[str, int, int, Point, Point]]:
        """All edges as (side, k, l, first, second) with k < l."""
        result = []
        for side, points in (("u", self.u), ("v", self.v)):
            for k in range(len(points)):
                for l in range(k + 1, len(points)):
                    result.append((side, k, l, points[k], points[l]))
        return result

    def connecting_lines(self) -> list[tuple[int, int, Point, Point]]:
        """All connecting lines as (k, l, u_k, v_l)."""
        return [
            (k, l, uk, vl)
            for k, uk in enumerate(self.u)
            for l, vl in enumerate(self.v)
        ]

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "level": self.level,
            "u": [point.to_list() for point in self.u],
            "v": [point.to_list() for point in self.v],
            "index_set": list(self.index_set),
            "blocks": [list(block) for block in self.blocks],
        }
