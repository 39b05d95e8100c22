"""Generalized modified Enflo spaces.

Construct spaces, classify and sample segments, build segment-transitive
isometries and explicit double simplices.

Usage:
    from enflo.space import make_space_spec, double_simplex, verify_double_simplex

    spec = make_space_spec(3)
    report = verify_double_simplex(spec, double_simplex(spec, 2))
"""

from .isometry import (
    apply_array,
    apply_isometry,
    apply_to_segment,
    compose,
    invert,
    isometry_group,
    isometry_group_size,
    random_isometry,
    transitive_isometry,
)
from .metric import (
    canonical_segment,
    count_segments_formula,
    cyclic_distance,
    distance,
    enumerate_points,
    enumerate_segments,
    make_custom_spec,
    make_space_spec,
    flat_index,
    default_family_table,
    point_array,
    random_segment,
    sample_segment_arrays,
    segment_level,
    segment_levels_array,
    segment_offsets,
    segment_tuples,
)
from .models import (
    DimensionMismatchError,
    DivisibilityError,
    DoubleSimplex,
    Isometry,
    LevelOutOfRangeError,
    Point,
    Segment,
    SegmentLevelError,
    SpaceSpec,
    SpaceSpecError,
    SpecMismatchError,
    StepTooLargeError,
    SupportParityError,
)
from .simplex import (
    SimplexReport,
    double_simplex,
    transported_double_simplex,
    verify_double_simplex,
)
from .transitivity import TransitivityReport, probe_segments, transitivity_check

__all__ = [
    "SpaceSpec",
    "Point",
    "Segment",
    "Isometry",
    "DoubleSimplex",
    "SimplexReport",
    "make_space_spec",
    "make_custom_spec",
    "cyclic_distance",
    "distance",
    "segment_level",
    "segment_levels_array",
    "canonical_segment",
    "random_segment",
    "sample_segment_arrays",
    "enumerate_points",
    "point_array",
    "flat_index",
    "segment_offsets",
    "enumerate_segments",
    "segment_tuples",
    "count_segments_formula",
    "default_family_table",
    "apply_isometry",
    "apply_array",
    "apply_to_segment",
    "compose",
    "invert",
    "transitive_isometry",
    "random_isometry",
    "isometry_group",
    "isometry_group_size",
    "double_simplex",
    "verify_double_simplex",
    "transported_double_simplex",
    "TransitivityReport",
    "probe_segments",
    "transitivity_check",
    "SpaceSpecError",
    "DivisibilityError",
    "SupportParityError",
    "StepTooLargeError",
    "DimensionMismatchError",
    "LevelOutOfRangeError",
    "SegmentLevelError",
    "SpecMismatchError",
]
