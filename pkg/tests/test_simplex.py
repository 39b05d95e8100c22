"""Tests for double simplices."""

import pytest

from enflo.space import (
    DoubleSimplex,
    LevelOutOfRangeError,
    Point,
    double_simplex,
    make_custom_spec,
    make_space_spec,
    random_isometry,
    segment_level,
    transported_double_simplex,
    verify_double_simplex,
)
from enflo.space.simplex import simplex_blocks


class TestDoubleSimplex:
    """Tests for the explicit construction."""

    def test_n2_points(self):
        """At n=2 the construction is the pair of 4+4 split points."""
        spec = make_space_spec(2)
        ds = double_simplex(spec, 1)
        assert [u.to_list() for u in ds.u] == [
            [2, 2, 0, 0, 1, 1, 1, 1],
            [0, 0, 2, 2, 1, 1, 1, 1],
        ]
        assert [v.to_list() for v in ds.v] == [
            [1, 1, 1, 1, 2, 2, 0, 0],
            [1, 1, 1, 1, 0, 0, 2, 2],
        ]

    def test_n2_levels(self):
        """u-edges are top-level segments and lines are level 0."""
        spec = make_space_spec(2)
        ds = double_simplex(spec, 1)
        assert segment_level(spec, ds.u[0], ds.u[1]) == 1
        assert segment_level(spec, ds.u[0], ds.v[0]) == 0

    def test_blueprint_sizes(self):
        """The index set splits into n equal blocks."""
        spec = make_space_spec(3)
        index_set, blocks = simplex_blocks(spec, 2)
        assert len(index_set) == 3 * 6 // 2
        assert [len(block) for block in blocks] == [3, 3, 3]

    def test_points_are_sparse_at_full_scale(self):
        """Full-scale vertices are stored sparsely."""
        ds = double_simplex(make_space_spec(4), 3)
        assert all(point.is_sparse for point in ds.u + ds.v)

    def test_odd_support_for_p2(self):
        """Support 1 with p=2 leaves the second block empty."""
        spec = make_custom_spec(8, 2, 2, 1)
        ds = double_simplex(spec, 1)
        assert ds.blocks == ((0,), ())
        assert verify_double_simplex(spec, ds).passed

    def test_out_of_range(self):
        with pytest.raises(LevelOutOfRangeError):
            double_simplex(make_space_spec(2), 0)
        with pytest.raises(LevelOutOfRangeError):
            double_simplex(make_space_spec(2), 2)


class TestVerifyDoubleSimplex:
    """Tests for verify_double_simplex."""

    @pytest.mark.parametrize(
        ("n", "m"),
        [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)],
    )
    def test_full_scale(self, n: int, m: int):
        """n(n-1) edge pairs plus n^2 line pairs, all of the right level."""
        spec = make_space_spec(n)
        report = verify_double_simplex(spec, double_simplex(spec, m))
        assert report.passed
        assert report.pairs_checked == n * (n - 1) + n * n

    @pytest.mark.parametrize("shape", [(8, 2, 2, 1), (8, 4, 2, 1), (10, 4, 2, 2)])
    def test_desk_scale(self, shape: tuple[int, int, int, int]):
        spec = make_custom_spec(*shape)
        for m in range(1, spec.L + 1):
            assert verify_double_simplex(spec, double_simplex(spec, m)).passed

    def test_perturbed_point_fails(self):
        """The first bad pair is reported with its kind and indices."""
        spec = make_space_spec(2)
        ds = double_simplex(spec, 1)
        coords = list(ds.u[0].coords)
        coords[0] = (coords[0] + 1) % spec.q
        broken = DoubleSimplex((Point(coords), ds.u[1]), ds.v, 1)
        report = verify_double_simplex(spec, broken)
        assert not report.passed
        kind, k, l, _ = report.violation
        assert kind == "edge-u"
        assert (k, l) == (0, 1)
        assert report.to_dict()["violation"]["kind"] == "edge-u"

    def test_transported_still_valid(self):
        """Isometric images of a double simplex are double simplices."""
        spec = make_space_spec(3)
        ds = double_simplex(spec, 2)
        for seed in range(5):
            moved = transported_double_simplex(spec, random_isometry(spec, seed), ds)
            assert verify_double_simplex(spec, moved).passed
