"""Double-simplex inequality, class means, the averaging chain and the certificate.

Usage:
    from enflo.poincare import Mode, chain_check, enflo_certificate

    report = chain_check(spec, fmap, Mode.exact)
    if report.passed:
        ...
"""

from .chain import (
    LIMIT_BOUND,
    certificate_bound,
    chain_check,
    chain_factor,
    e_bound_holds,
    enflo_certificate,
    iterated_factor,
    orbit_average_check,
    orbit_regularity,
)
from .inequality import (
    GapTrials,
    as_fraction_config,
    double_simplex_gap,
    gap_trials,
    random_config,
    squared_distance,
)
from .means import (
    ClassStatistics,
    IrrationalMapError,
    class_statistics,
    enumerated_mean_g,
    exact_mean_g,
    image_array,
    mean_table,
    sampled_mean_g,
)
from .models import (
    CertificateReport,
    ChainLevel,
    ChainReport,
    EuclideanConfig,
    GapResult,
    MeanTable,
    Mode,
    OrbitRegularity,
    OrbitReport,
    PoincareError,
    SampledMean,
)

__all__ = [
    "Mode",
    "EuclideanConfig",
    "GapResult",
    "GapTrials",
    "SampledMean",
    "MeanTable",
    "ChainLevel",
    "ChainReport",
    "CertificateReport",
    "OrbitRegularity",
    "OrbitReport",
    "ClassStatistics",
    "double_simplex_gap",
    "random_config",
    "gap_trials",
    "as_fraction_config",
    "squared_distance",
    "image_array",
    "class_statistics",
    "exact_mean_g",
    "enumerated_mean_g",
    "sampled_mean_g",
    "mean_table",
    "chain_factor",
    "iterated_factor",
    "e_bound_holds",
    "certificate_bound",
    "LIMIT_BOUND",
    "chain_check",
    "enflo_certificate",
    "orbit_average_check",
    "orbit_regularity",
    "PoincareError",
    "IrrationalMapError",
]
