"""Tests for space construction, the metric and segment classification."""

import importlib
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from enflo.errors import BudgetExceededError
from enflo.space import (
    DimensionMismatchError,
    DivisibilityError,
    LevelOutOfRangeError,
    Point,
    SpaceSpec,
    SpaceSpecError,
    StepTooLargeError,
    SupportParityError,
    canonical_segment,
    count_segments_formula,
    cyclic_distance,
    default_family_table,
    distance,
    enumerate_points,
    enumerate_segments,
    flat_index,
    make_custom_spec,
    make_space_spec,
    point_array,
    random_segment,
    sample_segment_arrays,
    segment_level,
    segment_levels_array,
)
from enflo.streams import derive_rng


@pytest.fixture
def tiny() -> SpaceSpec:
    """The 64-point space q=8, d=2, p=2, L=1."""
    return make_custom_spec(8, 2, 2, 1)


@pytest.fixture
def small() -> SpaceSpec:
    """q=10, d=4, p=2, L=2 (supports 4, 2, 1)."""
    return make_custom_spec(10, 4, 2, 2)


class TestMakeSpaceSpec:
    """Tests for the default family."""

    def test_n2(self):
        """n=2 gives q=8, d=8, p=2, L=1."""
        spec = make_space_spec(2)
        assert (spec.q, spec.d, spec.p, spec.L) == (8, 8, 2, 1)

    def test_n3(self):
        """n=3 gives d=2*3^3 with supports shrinking by 3."""
        spec = make_space_spec(3)
        assert (spec.q, spec.d, spec.p, spec.L) == (16, 54, 3, 2)
        assert [spec.support(m) for m in spec.levels] == [54, 18, 6]

    def test_n4_supports(self):
        spec = make_space_spec(4)
        assert spec.d == 512
        assert [spec.support(m) for m in spec.levels] == [512, 128, 32, 8]

    def test_rejects_n1(self):
        """The family starts at n=2."""
        with pytest.raises(SpaceSpecError):
            make_space_spec(1)


class TestMakeCustomSpec:
    """Tests for desk-scale spaces and their distinct failure reasons."""

    def test_tiny_valid(self, tiny: SpaceSpec):
        assert [tiny.support(m) for m in tiny.levels] == [2, 1]
        assert tiny.step(1) == 2
        assert tiny.num_points == 64

    def test_small_supports(self, small: SpaceSpec):
        assert [small.support(m) for m in small.levels] == [4, 2, 1]

    def test_divisibility(self):
        """p^L must divide d."""
        with pytest.raises(DivisibilityError):
            make_custom_spec(8, 4, 2, 3)

    def test_parity_for_p3(self):
        """Odd p needs even supports."""
        with pytest.raises(SupportParityError):
            make_custom_spec(16, 9, 3, 1)

    def test_step_too_large(self):
        """The top step must stay below q/2."""
        with pytest.raises(StepTooLargeError):
            make_custom_spec(8, 8, 2, 2)

    def test_step_equal_to_half_cycle(self):
        """step(L) = q/2 would make +step and -step the same residue."""
        with pytest.raises(StepTooLargeError):
            make_custom_spec(8, 4, 2, 2)

    def test_odd_q(self):
        with pytest.raises(SpaceSpecError):
            make_custom_spec(7, 2, 2, 1)

    def test_to_dict(self, tiny: SpaceSpec):
        assert tiny.to_dict() == {
            "q": 8,
            "d": 2,
            "p": 2,
            "L": 1,
            "supports": [2, 1],
            "steps": [1, 2],
        }


class TestPoint:
    """Tests for dense and sparse points."""

    def test_sparse_equals_dense(self):
        """Sparse and dense forms of a point compare and hash equal."""
        assert Point.sparse(3, {1: 2}) == Point((0, 2, 0))
        assert hash(Point.sparse(3, {1: 2})) == hash(Point((0, 2, 0)))

    def test_sparse_drops_zero(self):
        assert Point.sparse(4, {0: 0, 2: 5}).nonzero == ((2, 5),)

    def test_sparse_index_out_of_range(self):
        with pytest.raises(DimensionMismatchError):
            Point.sparse(2, {3: 1})

    def test_spec_point_reduces(self, tiny: SpaceSpec):
        """Coordinates are reduced mod q."""
        assert tiny.point((9, -1)) == Point((1, 7))

    def test_check_point_rejects_wrong_dimension(self, tiny: SpaceSpec):
        with pytest.raises(DimensionMismatchError):
            tiny.check_point(Point((0, 0, 0)))


class TestDistance:
    """Tests for the cyclic max metric."""

    def test_wraps_around(self):
        """0 and q-1 are neighbors."""
        assert cyclic_distance(0, 7, 8) == 1

    def test_max_over_coordinates(self, tiny: SpaceSpec):
        assert distance(tiny, Point((0, 0)), Point((3, 7))) == 3

    def test_zero_on_diagonal(self, tiny: SpaceSpec):
        assert distance(tiny, Point((5, 2)), Point((5, 2))) == 0

    def test_dimension_mismatch(self, tiny: SpaceSpec):
        with pytest.raises(DimensionMismatchError):
            distance(tiny, Point((0, 0)), Point((0, 0, 0)))

    @given(
        st.lists(st.integers(0, 15), min_size=4, max_size=4),
        st.lists(st.integers(0, 15), min_size=4, max_size=4),
        st.lists(st.integers(0, 15), min_size=4, max_size=4),
    )
    def test_metric_axioms(self, a: list[int], b: list[int], c: list[int]):
        """Symmetry, identity and the triangle inequality hold."""
        spec = make_custom_spec(16, 4, 2, 1)
        a, b, c = Point(a), Point(b), Point(c)
        ab = distance(spec, a, b)
        assert ab == distance(spec, b, a)
        assert (ab == 0) == (a == b)
        assert distance(spec, a, c) <= ab + distance(spec, b, c)
        assert 0 <= ab <= spec.q // 2


class TestSegmentLevel:
    """Tests for segment classification."""

    def test_level_zero_full_scale(self):
        """Unit steps on every coordinate are level 0."""
        spec = make_space_spec(2)
        assert segment_level(spec, spec.origin(), Point((1,) * 8)) == 0

    def test_level_one_full_scale(self):
        spec = make_space_spec(2)
        assert segment_level(spec, spec.origin(), Point((2, 2, 2, 2, 0, 0, 0, 0))) == 1

    def test_unclassified(self):
        """A segment with the wrong support has no level."""
        spec = make_space_spec(2)
        assert segment_level(spec, spec.origin(), Point((1, 1, 0, 0, 0, 0, 0, 0))) is None

    def test_negative_step_counts(self, tiny: SpaceSpec):
        """A step of -2 mod q counts as a step of 2."""
        assert segment_level(tiny, Point((0, 0)), Point((6, 0))) == 1

    def test_sparse_points(self):
        """Full-scale segments are classified from their non-zero entries."""
        spec = make_space_spec(3)
        b = spec.sparse_point({i: 4 for i in range(6)})
        assert segment_level(spec, spec.origin(), b) == 2

    def test_array_matches_scalar(self, small: SpaceSpec):
        """The vectorized classifier agrees with segment_level, using -1 for none."""
        rng = derive_rng(3, 1)
        A = rng.integers(0, 8, size=(200, 4))
        B = rng.integers(0, 8, size=(200, 4))
        levels = segment_levels_array(small, A, B)
        for a, b, level in zip(A.tolist(), B.tolist(), levels.tolist()):
            expected = segment_level(small, Point(a), Point(b))
            assert level == (-1 if expected is None else expected)


class TestCanonicalSegment:
    """Tests for canonical_segment."""

    def test_level_one(self, tiny: SpaceSpec):
        """The canonical segment moves the first support coordinates by the step."""
        segment = canonical_segment(tiny, 1)
        assert segment.a.to_list() == [0, 0]
        assert segment.b.to_list() == [2, 0]

    def test_level_zero(self, tiny: SpaceSpec):
        assert canonical_segment(tiny, 0).b.to_list() == [1, 1]

    def test_out_of_range(self):
        with pytest.raises(LevelOutOfRangeError):
            canonical_segment(make_space_spec(2), 2)


class TestRandomSegment:
    """Tests for segment sampling."""

    def test_deterministic(self, small: SpaceSpec):
        assert random_segment(small, 1, seed=11) == random_segment(small, 1, seed=11)

    def test_classifies_at_level(self, small: SpaceSpec):
        """Sampled segments land in the requested class."""
        for seed in range(20):
            for m in small.levels:
                segment = random_segment(small, m, seed)
                assert segment_level(small, segment.a, segment.b) == m

    def test_supports_uniform(self, tiny: SpaceSpec):
        """A coordinate is in the support about half the time at support 1 of 2."""
        rng = derive_rng(0, 1, 1)
        A, B = sample_segment_arrays(tiny, 1, 10_000, rng)
        first = np.mean(A[:, 0] != B[:, 0])
        sigma = math.sqrt(0.25 / 10_000)
        assert abs(first - 0.5) <= 3 * sigma


class TestCounting:
    """Tests for segment counts and enumeration."""

    @pytest.mark.parametrize(
        ("shape", "m", "expected"),
        [
            ((8, 2, 2, 1), 1, 256),
            ((8, 2, 2, 1), 0, 256),
            ((10, 4, 2, 2), 2, 80000),
        ],
    )
    def test_formula(self, shape: tuple[int, int, int, int], m: int, expected: int):
        """Closed-form ordered counts."""
        assert count_segments_formula(make_custom_spec(*shape), m) == expected

    def test_enumeration_matches_formula(self, small: SpaceSpec):
        """Enumeration yields distinct segments, as many as the formula says."""
        for m in small.levels:
            segments = list(enumerate_segments(small, m))
            assert len(segments) == count_segments_formula(small, m)
            assert len(set(segments)) == len(segments)
            assert all(segment_level(small, s.a, s.b) == m for s in segments[:500])

    def test_enumeration_budget(self, small: SpaceSpec):
        with pytest.raises(BudgetExceededError):
            enumerate_points(small, budget=100)

    def test_tiny_point_count(self, tiny: SpaceSpec):
        assert len(list(enumerate_points(tiny))) == 64


class TestPointArray:
    """Tests for the flat point layout."""

    def test_rows_are_lexicographic(self, tiny: SpaceSpec):
        """Row i of the array is the i-th enumerated point."""
        P = point_array(tiny)
        assert [tuple(row) for row in P.tolist()] == [
            point.coords for point in enumerate_points(tiny)
        ]

    def test_flat_index_inverts(self, small: SpaceSpec):
        P = point_array(small)
        assert np.array_equal(flat_index(small, P), np.arange(len(P)))

    def test_budget(self, small: SpaceSpec):
        with pytest.raises(BudgetExceededError):
            point_array(small, budget=10)


class TestDefaultFamilyTable:
    """Tests for the full-scale table."""

    def test_rows(self):
        """One row per n with the chain factor and certificate bound."""
        rows = default_family_table(4)
        assert [row["n"] for row in rows] == [2, 3, 4]
        assert rows[1]["d"] == 54
        assert rows[0]["iterated_factor"] == pytest.approx(2.0)
        assert rows[0]["certificate_bound"] == pytest.approx(math.sqrt(2))

    def test_bound_increases_towards_sqrt_e(self):
        """The certificate bound climbs towards sqrt(e)."""
        bounds = [row["certificate_bound"] for row in default_family_table(50)]
        assert all(x < y for x, y in zip(bounds, bounds[1:]))
        assert bounds[-1] < math.sqrt(math.e)
        assert math.sqrt(math.e) - bounds[-1] < 1e-2

    def test_rejects_small_n(self):
        with pytest.raises(LevelOutOfRangeError):
            default_family_table(1)


class TestExports:
    """Tests for the public names of each package."""

    @pytest.mark.parametrize(
        "package", ["enflo.space", "enflo.embeddings", "enflo.poincare", "enflo.graphgroup"]
    )
    def test_every_export_resolves(self, package: str):
        module = importlib.import_module(package)
        missing = [name for name in module.__all__ if not hasattr(module, name)]
        assert missing == []
