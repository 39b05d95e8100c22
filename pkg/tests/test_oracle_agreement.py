"""Agreement between the package and the brute-force reference in tests/oracle.py.

Desk-scale spaces only; every loop here is exhaustive.
"""

import networkx as nx
import pytest

from enflo.embeddings import CircleLift, CoordinateLift, random_integer_map
from enflo.errors import BudgetExceededError
from enflo.graphgroup import unit_graph
from enflo.poincare import enumerated_mean_g, exact_mean_g
from enflo.space import (
    Point,
    Segment,
    SpaceSpec,
    apply_isometry,
    count_segments_formula,
    distance,
    enumerate_points,
    enumerate_segments,
    isometry_group,
    make_custom_spec,
    transitive_isometry,
)

from .oracle import (
    OracleBudget,
    oracle_apply,
    oracle_bfs,
    oracle_distance,
    oracle_group,
    oracle_mean,
    oracle_segments,
    oracle_unit_adjacency,
)


@pytest.fixture
def tiny() -> SpaceSpec:
    """The 64-point space q=8, d=2, p=2, L=1."""
    return make_custom_spec(8, 2, 2, 1)


@pytest.fixture
def small() -> SpaceSpec:
    """The 4096-point space q=8, d=4, p=2, L=1."""
    return make_custom_spec(8, 4, 2, 1)


class TestSegments:
    """Segment classes against the definition."""

    @pytest.mark.parametrize("m", [0, 1])
    def test_tiny_classes(self, tiny: SpaceSpec, m: int):
        """Enumeration, formula and definition give the same ordered pairs."""
        expected = set(oracle_segments(tiny, m))
        found = {(s.a.coords, s.b.coords) for s in enumerate_segments(tiny, m)}

        assert found == expected
        assert len(expected) == count_segments_formula(tiny, m)

    @pytest.mark.slow
    @pytest.mark.parametrize("m", [0, 1])
    def test_small_classes(self, small: SpaceSpec, m: int):
        """Same agreement on the 4096-point space."""
        expected = oracle_segments(small, m)
        found = {(s.a.coords, s.b.coords) for s in enumerate_segments(small, m)}

        assert found == set(expected)
        assert len(expected) == count_segments_formula(small, m)

    def test_level_outside_range_is_empty(self, tiny: SpaceSpec):
        """The definition admits no segments above the top level."""
        assert oracle_segments(tiny, 2) == []

    def test_oracle_budget(self, small: SpaceSpec):
        """The reference refuses work above its own budget."""
        with pytest.raises(BudgetExceededError):
            oracle_segments(small, 0, OracleBudget(max_pairs=1000))


class TestDistance:
    """The max metric against the reference."""

    def test_all_pairs(self, tiny: SpaceSpec):
        """Every pair of points agrees."""
        points = list(enumerate_points(tiny))
        for a in points:
            for b in points:
                assert distance(tiny, a, b) == oracle_distance(8, a.coords, b.coords)


class TestMeans:
    """Class means against term-by-term sums."""

    @pytest.mark.parametrize("index", range(5))
    def test_exact_random_maps(self, tiny: SpaceSpec, index: int):
        """Exact means equal the reference Fractions."""
        fmap = random_integer_map(tiny, index=index)
        for m in tiny.levels:
            assert exact_mean_g(tiny, fmap, m) == oracle_mean(tiny, fmap, m)

    def test_coordinate_lift(self, tiny: SpaceSpec):
        """The wrap-around map agrees too."""
        fmap = CoordinateLift(tiny)
        for m in tiny.levels:
            assert exact_mean_g(tiny, fmap, m) == oracle_mean(tiny, fmap, m)

    def test_circle_enumerated(self, tiny: SpaceSpec):
        """Float means match the reference's Fraction of the float images."""
        fmap = CircleLift(tiny)
        for m in tiny.levels:
            assert enumerated_mean_g(tiny, fmap, m) == pytest.approx(
                float(oracle_mean(tiny, fmap, m))
            )


class TestGroup:
    """The isometry group against an independent enumeration."""

    def test_same_elements(self, tiny: SpaceSpec):
        """Both list the same 512 isometries."""
        expected = oracle_group(tiny)
        found = list(isometry_group(tiny))

        assert len(expected) == 512
        assert set(found) == set(expected)

    def test_action(self, tiny: SpaceSpec):
        """Applying an element agrees with the reference formula."""
        points = list(enumerate_points(tiny))
        for h in oracle_group(tiny)[::37]:
            for x in points:
                assert apply_isometry(h, x).coords == oracle_apply(h, x.coords)

    def test_closed_under_composition(self, tiny: SpaceSpec):
        """Every product of two elements acts like some element."""
        group = oracle_group(tiny)
        points = list(enumerate_points(tiny))
        actions = {tuple(oracle_apply(h, x.coords) for x in points) for h in group}
        for h1 in group[::61]:
            for h2 in group[::47]:
                product = tuple(oracle_apply(h1, oracle_apply(h2, x.coords)) for x in points)
                assert product in actions

    def test_transitive_on_level_one(self, tiny: SpaceSpec):
        """Some element carries a fixed segment to every other one."""
        segments = oracle_segments(tiny, 1)
        a0, b0 = segments[0]
        reachable = {(oracle_apply(h, a0), oracle_apply(h, b0)) for h in oracle_group(tiny)}

        assert reachable == set(segments)

    def test_transitive_isometry_is_an_element(self, tiny: SpaceSpec):
        """The constructed isometry is one of the enumerated ones."""
        group = set(oracle_group(tiny))
        segments = oracle_segments(tiny, 0)
        s1 = Segment(Point(segments[0][0]), Point(segments[0][1]), 0)
        for a, b in segments[::17]:
            h = transitive_isometry(tiny, s1, Segment(Point(a), Point(b), 0))
            assert h in group


class TestUnitGraph:
    """Unit graph distances against a plain BFS."""

    def test_bfs(self, tiny: SpaceSpec):
        """networkx distances equal reference BFS distances from several sources."""
        graph = unit_graph(tiny)
        adjacency = oracle_unit_adjacency(tiny)
        for source in [(0, 0), (3, 5), (7, 7)]:
            expected = oracle_bfs(adjacency, source)
            assert nx.single_source_shortest_path_length(graph, source) == expected
