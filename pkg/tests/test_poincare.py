"""Tests for the double-simplex inequality, class means, the chain and the certificate."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enflo.embeddings import (
    CircleLift,
    CoordinateLift,
    RandomLinear,
    Tabulated,
    constant_map,
    random_integer_map,
    tabulate,
)
from enflo.errors import BudgetExceededError
from enflo.poincare import (
    LIMIT_BOUND,
    EuclideanConfig,
    IrrationalMapError,
    Mode,
    PoincareError,
    as_fraction_config,
    certificate_bound,
    chain_check,
    chain_factor,
    double_simplex_gap,
    e_bound_holds,
    enflo_certificate,
    enumerated_mean_g,
    exact_mean_g,
    gap_trials,
    image_array,
    iterated_factor,
    mean_table,
    orbit_average_check,
    orbit_regularity,
    random_config,
    sampled_mean_g,
)
from enflo.space import (
    Point,
    SpaceSpec,
    apply_isometry,
    make_custom_spec,
    make_space_spec,
    random_isometry,
)
from enflo.streams import derive_rng


@pytest.fixture
def tiny() -> SpaceSpec:
    """The 64-point space q=8, d=2, p=2, L=1."""
    return make_custom_spec(8, 2, 2, 1)


@pytest.fixture
def small() -> SpaceSpec:
    """The 10000-point space q=10, d=4, p=2, L=2."""
    return make_custom_spec(10, 4, 2, 2)


@st.composite
def integer_configs(draw) -> EuclideanConfig:
    """Integer double-simplex configurations with 2 to 5 points per side."""
    p = draw(st.integers(2, 5))
    dim = draw(st.integers(1, 6))
    point = st.tuples(*[st.integers(-50, 50)] * dim)
    u = draw(st.lists(point, min_size=p, max_size=p))
    v = draw(st.lists(point, min_size=p, max_size=p))
    return EuclideanConfig(tuple(u), tuple(v))


def _scaled(fmap: Tabulated, factor: int) -> Tabulated:
    """The table map multiplied by an integer factor."""
    table = {coords: tuple(factor * x for x in image) for coords, image in fmap.table.items()}
    return Tabulated(fmap.spec, table, fmap.name)


class TestDoubleSimplexGap:
    """Tests for the Euclidean inequality."""

    def test_square(self):
        """Unit square: two diagonals as edges, four sides as lines."""
        cfg = EuclideanConfig(((0, 0), (1, 1)), ((1, 0), (0, 1)))
        result = double_simplex_gap(cfg)
        assert result.sum_c == 4
        assert result.sum_s == 4
        assert result.gap == 0
        assert result.identity_holds

    def test_collapsed_sides(self):
        """With both sides collapsed the whole gap is the witness term."""
        cfg = EuclideanConfig(((0,), (0,)), ((3,), (3,)))
        result = double_simplex_gap(cfg)
        assert result.sum_s == 0
        assert result.gap == result.witness == 36

    @given(integer_configs())
    def test_identity_exact(self, cfg: EuclideanConfig):
        """Integer configurations satisfy the identity exactly."""
        result = double_simplex_gap(cfg)
        assert result.exact
        assert result.identity_holds
        assert result.gap >= 0

    def test_float_config_is_exact_as_fractions(self):
        """Float configurations are checked exactly once turned into Fractions."""
        cfg = random_config(derive_rng(5, 8), 4, 7, exact=False)
        assert not cfg.is_exact
        exact = double_simplex_gap(as_fraction_config(cfg))
        assert isinstance(exact.gap, Fraction)
        assert exact.identity_holds

    def test_rejects_unequal_sides(self):
        with pytest.raises(PoincareError):
            EuclideanConfig(((0,), (1,)), ((0,),))

    def test_rejects_single_point(self):
        with pytest.raises(PoincareError):
            EuclideanConfig(((0,),), ((1,),))

    def test_rejects_mixed_dimensions(self):
        with pytest.raises(PoincareError):
            EuclideanConfig(((0,), (1, 2)), ((0,), (1,)))


class TestGapTrials:
    """Tests for the random-trial driver."""

    def test_exact_trials(self):
        """1000 exact random trials never go negative."""
        result = gap_trials(1000, seed=0)
        assert result.passed
        assert result.trials == 1000
        assert result.min_gap >= 0
        assert result.first_failure is None

    def test_float_trials(self):
        result = gap_trials(500, seed=1, exact=False)
        assert result.passed
        assert not result.exact

    def test_deterministic(self):
        """Same seed, same summary."""
        assert gap_trials(50, seed=3).to_dict() == gap_trials(50, seed=3).to_dict()


class TestFactors:
    """Tests for chain factors and bounds."""

    def test_chain_factor(self):
        assert chain_factor(2) == 2
        assert chain_factor(3) == Fraction(3, 2)

    def test_chain_factor_rejects_p1(self):
        with pytest.raises(PoincareError):
            chain_factor(1)

    def test_iterated_factor(self):
        assert iterated_factor(3, 2) == Fraction(9, 4)

    @pytest.mark.parametrize("p", range(2, 11))
    def test_e_bound(self, p: int):
        """(p/(p-1))^((p-1)/2) stays below sqrt(e)."""
        assert e_bound_holds(p)
        assert certificate_bound(p, p - 1) < LIMIT_BOUND

    def test_certificate_bound(self):
        assert certificate_bound(2, 1) == pytest.approx(math.sqrt(2))


class TestClassMeans:
    """Tests for exact, enumerated and sampled class means."""

    def test_coordinate_lift_exact(self, tiny: SpaceSpec):
        """Hand-computed means of the wrap-around map."""
        fmap = CoordinateLift(tiny)
        # shift by 2 wraps for 2 of 8 residues: (6*4 + 2*36) / 8
        assert exact_mean_g(tiny, fmap, 1) == 12
        # shift by 1 in both coordinates: 2 * (7*1 + 49) / 8
        assert exact_mean_g(tiny, fmap, 0) == 14

    def test_enumerated_matches_exact(self, small: SpaceSpec):
        """Float enumeration agrees with Fractions."""
        fmap = random_integer_map(small, seed=2)
        for m in small.levels:
            assert enumerated_mean_g(small, fmap, m) == pytest.approx(
                float(exact_mean_g(small, fmap, m))
            )

    def test_irrational_map_rejected(self, tiny: SpaceSpec):
        with pytest.raises(IrrationalMapError):
            exact_mean_g(tiny, CircleLift(tiny), 1)

    def test_budget(self, small: SpaceSpec):
        with pytest.raises(BudgetExceededError):
            exact_mean_g(small, CoordinateLift(small), 0, budget=100)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_sampled_within_sigma_gate(self, small: SpaceSpec, seed: int):
        """Estimates sit within 4 standard errors of the exact mean."""
        fmap = random_integer_map(small, seed=7)
        for m in small.levels:
            exact = float(exact_mean_g(small, fmap, m))
            estimate = sampled_mean_g(small, fmap, m, 10_000, seed)
            assert abs(estimate.estimate - exact) <= 4 * estimate.stderr

    def test_sampled_needs_two_samples(self, tiny: SpaceSpec):
        with pytest.raises(PoincareError):
            sampled_mean_g(tiny, CircleLift(tiny), 0, 1)

    def test_table_csv_rows(self, tiny: SpaceSpec):
        """Exact tables leave the stderr column empty."""
        table = mean_table(tiny, CoordinateLift(tiny), Mode.exact)
        assert table.values == [14, 12]
        assert table.csv_rows() == [[0, 14, "", 256], [1, 12, "", 256]]

    def test_huge_images_use_python_ints(self, tiny: SpaceSpec):
        """Images near 2^40 leave int64 and the means stay exact."""
        big = 2**40
        fmap = tabulate(tiny, lambda coords: tuple(big * c for c in coords))

        assert image_array(tiny, fmap, exact=True).dtype == object
        assert exact_mean_g(tiny, fmap, 0) == 14 * big**2
        assert exact_mean_g(tiny, fmap, 1) == 12 * big**2
        report = orbit_average_check(tiny, 1, fmap, Mode.exact)
        assert report.line_mean == 14 * big**2
        assert report.edge_mean == 12 * big**2

    @pytest.mark.slow
    def test_class_totals_past_int64(self):
        """Per-segment sums fit int64 but the 65536-point class totals do not."""
        spec = make_custom_spec(16, 4, 2, 2)
        factor = 2**24
        unit = CoordinateLift(spec)
        fmap = tabulate(spec, lambda coords: tuple(factor * c for c in coords))

        assert image_array(spec, fmap, exact=True).dtype == np.int64
        for m in spec.levels:
            expected = factor**2 * exact_mean_g(spec, unit, m)
            assert exact_mean_g(spec, fmap, m) == expected
            assert expected > 0


class TestMeanInvariants:
    """Properties every class mean obeys, whatever the map."""

    @settings(max_examples=25, deadline=None)
    @given(st.integers(2, 10**6), st.integers(0, 50))
    def test_scaling(self, factor: int, index: int):
        """Scaling the map by c scales every mean by c^2 and keeps every verdict."""
        spec = make_custom_spec(8, 2, 2, 1)
        fmap = random_integer_map(spec, index=index)
        scaled = _scaled(fmap, factor)

        for m in spec.levels:
            assert exact_mean_g(spec, scaled, m) == factor**2 * exact_mean_g(spec, fmap, m)
        assert chain_check(spec, scaled, Mode.exact).verdict == (
            chain_check(spec, fmap, Mode.exact).verdict
        )
        assert enflo_certificate(spec, scaled, Mode.exact).verdict == (
            enflo_certificate(spec, fmap, Mode.exact).verdict
        )

    @pytest.mark.parametrize("scale", [0.5, 3.0])
    def test_circle_scaling(self, tiny: SpaceSpec, scale: float):
        unit = mean_table(tiny, CircleLift(tiny), Mode.enumerated)
        scaled = mean_table(tiny, CircleLift(tiny, scale), Mode.enumerated)

        assert scaled.values == pytest.approx([scale**2 * v for v in unit.values])

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10**6), st.integers(0, 50))
    def test_isometry_invariance(self, seed: int, index: int):
        """Precomposing with an isometry leaves every class mean unchanged."""
        spec = make_custom_spec(8, 2, 2, 1)
        fmap = random_integer_map(spec, index=index)
        h = random_isometry(spec, seed)
        moved = tabulate(spec, lambda coords: fmap.image(apply_isometry(h, Point(coords)).coords))

        for m in spec.levels:
            assert exact_mean_g(spec, moved, m) == exact_mean_g(spec, fmap, m)

    def test_stderr_shrinks_with_samples(self, small: SpaceSpec):
        """Doubling the sample count roughly halves the squared standard error."""
        fmap = random_integer_map(small, seed=3)
        for m in small.levels:
            few = sampled_mean_g(small, fmap, m, 4000, seed=1)
            many = sampled_mean_g(small, fmap, m, 8000, seed=2)
            assert 1.5 < few.stderr**2 / many.stderr**2 < 2.7


class TestChainCheck:
    """Tests for the averaging chain."""

    def test_random_maps_tiny(self, tiny: SpaceSpec):
        """The chain holds for 100 random integer maps."""
        for index in range(100):
            fmap = random_integer_map(tiny, index=index)
            report = chain_check(tiny, fmap, Mode.exact)
            assert report.passed, report.to_dict()

    @pytest.mark.slow
    def test_random_maps_small(self, small: SpaceSpec):
        for index in range(25):
            fmap = random_integer_map(small, index=index)
            assert chain_check(small, fmap, Mode.exact).passed

    def test_iterated_slack(self, tiny: SpaceSpec):
        """slack = factor * g(0) - g(L)."""
        report = chain_check(tiny, CoordinateLift(tiny), Mode.exact)
        assert report.iterated_factor == 2
        assert report.iterated_slack == 2 * 14 - 12
        assert report.e_bound is True

    def test_circle_enumerated(self, small: SpaceSpec):
        """No e-bound is claimed outside exact or sampled runs."""
        report = chain_check(small, CircleLift(small), Mode.enumerated)
        assert report.passed
        assert report.e_bound is None

    def test_sampled_full_scale(self):
        """Sampled runs carry standard errors."""
        spec = make_space_spec(3)
        report = chain_check(spec, CircleLift(spec), Mode.sampled, samples=2000, seed=4)
        assert report.passed
        assert report.table.stderrs is not None
        assert report.e_bound is True


class TestCertificate:
    """Tests for the Enflo-ratio certificate."""

    def test_circle_ratio(self, tiny: SpaceSpec):
        """The circle lift stays below sqrt(2)."""
        report = enflo_certificate(tiny, CircleLift(tiny), Mode.enumerated)
        assert report.verdict == "pass"
        assert report.ratio == pytest.approx(1.30656, abs=1e-3)
        assert report.bound == pytest.approx(math.sqrt(2))
        assert report.ratio <= report.bound

    def test_exact_random_map(self, tiny: SpaceSpec):
        report = enflo_certificate(tiny, random_integer_map(tiny, index=3), Mode.exact)
        assert report.verdict == "pass"
        assert report.inf_top_sq <= 2 * report.sup_bottom_sq

    def test_exact_numbers_serialize_as_strings(self, tiny: SpaceSpec):
        """Exact squared extremes become strings; the enumerated ones stay floats."""
        fmap = CoordinateLift(tiny)
        exact = enflo_certificate(tiny, fmap, Mode.exact).to_dict()
        floats = enflo_certificate(tiny, fmap, Mode.enumerated).to_dict()

        assert exact["inf_top_sq"] == str(int(exact["inf_top_sq"]))
        assert exact["sup_bottom_sq"] == str(int(exact["sup_bottom_sq"]))
        assert float(exact["sup_bottom_sq"]) == floats["sup_bottom_sq"]
        assert isinstance(floats["inf_top_sq"], float)

    def test_constant_map_degenerate(self, tiny: SpaceSpec):
        """Collapsing both levels gives a degenerate verdict."""
        report = enflo_certificate(tiny, constant_map(tiny), Mode.exact)
        assert report.verdict == "degenerate"
        assert report.ratio == 0.0

    @pytest.mark.parametrize(
        "build",
        [
            CircleLift,
            CoordinateLift,
            RandomLinear,
            lambda spec: random_integer_map(spec, index=11),
            constant_map,
        ],
        ids=["circle", "coordinate", "random", "random-integer", "constant"],
    )
    def test_builtin_maps_never_violate(self, tiny: SpaceSpec, build):
        """No built-in map beats the certificate bound."""
        fmap = build(tiny)
        mode = Mode.exact if fmap.is_rational else Mode.enumerated
        report = enflo_certificate(tiny, fmap, mode)

        assert report.verdict in ("pass", "degenerate")
        if report.verdict == "pass":
            assert report.ratio <= report.bound

    def test_sampled_is_illustration(self):
        """Sampled runs cannot certify and say why."""
        spec = make_space_spec(3)
        report = enflo_certificate(spec, CircleLift(spec), Mode.sampled, samples=500)
        assert report.verdict == "illustration"
        assert report.note


class TestOrbits:
    """Tests for orbit regularity and orbit averages."""

    def test_regularity_tiny(self, tiny: SpaceSpec):
        """Each edge is hit 8 times and each line 16 times by the group."""
        regularity = orbit_regularity(tiny, 1)
        assert regularity.group_size == 512
        assert regularity.edge_multiplicities == [8]
        assert regularity.line_multiplicities == [16]
        assert regularity.regular

    def test_orbit_average_exact(self, tiny: SpaceSpec):
        """Orbit averages reproduce the class means."""
        fmap = random_integer_map(tiny, index=5)
        report = orbit_average_check(tiny, 1, fmap, Mode.exact)
        assert report.verdict == "pass"
        assert report.identity_holds
        assert report.line_mean == exact_mean_g(tiny, fmap, 0)
        assert report.edge_mean == exact_mean_g(tiny, fmap, 1)
        assert report.simplex_violations == 0

    def test_orbit_average_enumerated_circle(self, tiny: SpaceSpec):
        report = orbit_average_check(tiny, 1, CircleLift(tiny), Mode.enumerated)
        assert report.verdict == "pass"
        assert report.ratio <= report.ratio_bound

    def test_group_budget(self, small: SpaceSpec):
        """The 4-dimensional group is above the default group budget."""
        with pytest.raises(BudgetExceededError):
            orbit_average_check(small, 1, CoordinateLift(small), Mode.exact)

    def test_sampled_orbit(self):
        """Random isometries stand in for the group at full scale."""
        spec = make_space_spec(3)
        report = orbit_average_check(spec, 2, CircleLift(spec), Mode.sampled, samples=500)
        assert report.orbit_size == 500
        assert report.verdict == "pass"
        assert report.ratio <= report.ratio_bound + 1e-9

    @pytest.mark.slow
    def test_sampled_orbit_full_scale_n4(self):
        spec = make_space_spec(4)
        report = orbit_average_check(spec, 3, CircleLift(spec), Mode.sampled, samples=10_000)
        assert report.verdict == "pass"
        assert report.simplex_violations == 0

    @pytest.mark.slow
    def test_sampled_orbit_matches_chords_n4(self):
        """Circle-lift orbit means agree with the chord lengths of each level."""
        spec = make_space_spec(4)

        def chord_mean(m: int) -> float:
            return spec.support(m) * 4 * math.sin(math.pi * spec.step(m) / spec.q) ** 2

        for m in range(1, spec.L + 1):
            report = orbit_average_check(spec, m, CircleLift(spec), Mode.sampled, samples=2000)
            line_gap = abs(report.line_mean - chord_mean(m - 1))
            edge_gap = abs(report.edge_mean - chord_mean(m))
            assert line_gap <= 4 * report.line_stderr + 1e-9 * chord_mean(m - 1)
            assert edge_gap <= 4 * report.edge_stderr + 1e-9 * chord_mean(m)
