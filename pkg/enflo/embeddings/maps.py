"""Candidate embedding maps from a modified Enflo space into R^D.

Maps are evaluated lazily, point by point (``image``) or on a batch of
dense coordinate rows (``eval_batch``); nothing is tabulated over the
whole space unless a Tabulated map is built on purpose.
"""

import csv
import math
from abc import ABC, abstractmethod
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from enflo.config import DEFAULTS
from enflo.errors import EnfloError
from enflo.space import DimensionMismatchError, Point, SpaceSpec, enumerate_points
from enflo.streams import RANDOM_LINEAR, RANDOM_MAPS, derive_rng

Number = int | Fraction | float
Vector = tuple[Number, ...]


class EmbeddingError(EnfloError):
    """Invalid embedding map or map input."""

    pass


class MissingTableEntryError(EmbeddingError):
    """A Tabulated map has no row for the requested point."""

    pass


class EmbeddingMap(ABC):
    """A map from points of ``spec`` to vectors of a fixed dimension."""

    spec: SpaceSpec

    @property
    @abstractmethod
    def dim(self) -> int:
        """Output dimension."""

    @property
    @abstractmethod
    def is_rational(self) -> bool:
        """True when every output coordinate is an int or Fraction."""

    @property
    @abstractmethod
    def kind(self) -> str:
        """Short name used in reports."""

    @abstractmethod
    def image(self, coords: tuple[int, ...]) -> Vector:
        """Image of the point with these dense coordinates."""

    def eval(self, point: Point) -> Vector:
        """Image of a point of the map's source space."""
        if point.d != self.spec.d:
            raise DimensionMismatchError(
                f"point has {point.d} coordinates, map expects d={self.spec.d}"
            )
        return self.image(point.coords)

    def eval_batch(self, X: np.ndarray) -> np.ndarray:
        """Float images of every row of an (n, d) residue array."""
        return np.array([[float(x) for x in self.image(tuple(row))] for row in X.tolist()])

    def describe(self) -> dict:
        return {"kind": self.kind, "dim": self.dim}


@dataclass(frozen=True)
class CircleLift(EmbeddingMap):
    """Each coordinate x -> scale * (cos 2πx/q, sin 2πx/q), concatenated (dimension 2d)."""

    spec: SpaceSpec
    scale: float = 1.0

    @property
    def dim(self) -> int:
        return 2 * self.spec.d

    @property
    def is_rational(self) -> bool:
        return False

    @property
    def kind(self) -> str:
        return "circle"

    def image(self, coords: tuple[int, ...]) -> Vector:
        turn = 2 * math.pi / self.spec.q
        values = []
        for x in coords:
            values.append(self.scale * math.cos(turn * x))
            values.append(self.scale * math.sin(turn * x))
        return tuple(values)

    def eval_batch(self, X: np.ndarray) -> np.ndarray:
        angles = 2 * np.pi * np.asarray(X, dtype=float) / self.spec.q
        out = np.empty(angles.shape[:-1] + (2 * angles.shape[-1],))
        out[..., 0::2] = self.scale * np.cos(angles)
        out[..., 1::2] = self.scale * np.sin(angles)
        return out

    def describe(self) -> dict:
        return {"kind": self.kind, "dim": self.dim, "scale": self.scale}


@dataclass(frozen=True)
class CoordinateLift(EmbeddingMap):
    """Canonical representatives in [0, q); ignores wrap-around."""

    spec: SpaceSpec

    @property
    def dim(self) -> int:
        return self.spec.d

    @property
    def is_rational(self) -> bool:
        return True

    @property
    def kind(self) -> str:
        return "coordinate"

    def image(self, coords: tuple[int, ...]) -> Vector:
        return tuple(c % self.spec.q for c in coords)

    def eval_batch(self, X: np.ndarray) -> np.ndarray:
        return np.mod(np.asarray(X), self.spec.q).astype(float)


@dataclass(frozen=True)
class RandomLinear(EmbeddingMap):
    """A fixed integer matrix applied to the CoordinateLift output.

    Entries are uniform integers in [-bound, bound] drawn from the
    RANDOM_LINEAR stream of ``seed``, so the map is rational.
    """

    spec: SpaceSpec
    target_dim: int = DEFAULTS["embedding"]["random_linear_dim"]
    seed: int = 0
    bound: int = DEFAULTS["embedding"]["random_linear_bound"]

    def __post_init__(self):
        if self.target_dim < 1:
            raise EmbeddingError(f"target_dim must be >= 1, got {self.target_dim}")
        if self.bound < 1:
            raise EmbeddingError(f"bound must be >= 1, got {self.bound}")

    @cached_property
    def matrix(self) -> np.ndarray:
        rng = derive_rng(self.seed, RANDOM_LINEAR)
        return rng.integers(-self.bound, self.bound + 1, size=(self.target_dim, self.spec.d))

    @property
    def dim(self) -> int:
        return self.target_dim

    @property
    def is_rational(self) -> bool:
        return True

    @property
    def kind(self) -> str:
        return "random"

    def image(self, coords: tuple[int, ...]) -> Vector:
        x = np.mod(np.asarray(coords, dtype=np.int64), self.spec.q)
        return tuple(int(v) for v in self.matrix @ x)

    def eval_batch(self, X: np.ndarray) -> np.ndarray:
        return (np.mod(np.asarray(X, dtype=np.int64), self.spec.q) @ self.matrix.T).astype(float)

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "seed": self.seed,
            "bound": self.bound,
        }


@dataclass(frozen=True)
class Tabulated(EmbeddingMap):
    """Lookup table from dense point coordinates to image vectors."""

    spec: SpaceSpec
    table: Mapping[tuple[int, ...], Vector] = field(hash=False)
    name: str = "table"

    def __post_init__(self):
        dims = {len(vector) for vector in self.table.values()}
        if len(dims) > 1:
            raise EmbeddingError(f"table rows have different dimensions: {sorted(dims)}")

    @property
    def dim(self) -> int:
        return len(next(iter(self.table.values()), ()))

    @cached_property
    def _rational(self) -> bool:
        return all(
            isinstance(x, (int, Fraction)) for vector in self.table.values() for x in vector
        )

    @property
    def is_rational(self) -> bool:
        return self._rational

    @property
    def kind(self) -> str:
        return "table"

    def image(self, coords: tuple[int, ...]) -> Vector:
        try:
            return self.table[tuple(coords)]
        except KeyError:
            raise MissingTableEntryError(f"no table entry for point {tuple(coords)}")

    def describe(self) -> dict:
        return {"kind": self.kind, "dim": self.dim, "name": self.name, "rows": len(self.table)}


def tabulate(
    spec: SpaceSpec,
    fn: Callable[[tuple[int, ...]], Vector],
    *,
    name: str = "table",
    budget: int = DEFAULTS["budgets"]["max_points"],
) -> Tabulated:
    """Tabulate fn over every point of a small space."""
    table = {point.coords: tuple(fn(point.coords)) for point in enumerate_points(spec, budget)}
    return Tabulated(spec, table, name)


def constant_map(spec: SpaceSpec, value: Vector = (0,), **kwargs) -> Tabulated:
    """Tabulated map sending every point to ``value``."""
    return tabulate(spec, lambda _: value, name="constant", **kwargs)


def random_integer_map(
    spec: SpaceSpec,
    *,
    dim: int = 3,
    low: int = -10,
    high: int = 10,
    seed: int = 0,
    index: int = 0,
    budget: int = DEFAULTS["budgets"]["max_points"],
) -> Tabulated:
    """Tabulated map with independent uniform integer images in [low, high]^dim.

    Draws from the RANDOM_MAPS stream (seed, index), so map ``index`` of a
    batch is reproducible on its own.
    """
    rng = derive_rng(seed, RANDOM_MAPS, index)
    points = list(enumerate_points(spec, budget))
    values = rng.integers(low, high + 1, size=(len(points), dim)).tolist()
    table = {point.coords: tuple(row) for point, row in zip(points, values)}
    return Tabulated(spec, table, f"random-integer-{index}")


def _parse_number(text: str) -> Number:
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    try:
        return int(text)
    except ValueError:
        return float(text)


def load_table_csv(spec: SpaceSpec, path: Path) -> Tabulated:
    """Read a Tabulated map: one row per point, d source coordinates then the image.

    Raises:
        EmbeddingError: If a row is too short or repeats a point.
        FileNotFoundError: If the file doesn't exist.
    """
    table: dict[tuple[int, ...], Vector] = {}
    with open(path, newline="") as f:
        for line_number, row in enumerate(csv.reader(f), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) <= spec.d:
                raise EmbeddingError(
                    f"{path}:{line_number}: expected {spec.d} source coordinates and an image"
                )
            source = tuple(int(x) % spec.q for x in row[: spec.d])
            if source in table:
                raise EmbeddingError(f"{path}:{line_number}: duplicate point {source}")
            table[source] = tuple(_parse_number(x) for x in row[spec.d :])
    return Tabulated(spec, table, Path(path).name)


def save_table_csv(table: Tabulated, path: Path) -> None:
    """Write a Tabulated map in the format read by load_table_csv."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        for source, vector in sorted(table.table.items()):
            writer.writerow([*source, *(str(x) for x in vector)])
