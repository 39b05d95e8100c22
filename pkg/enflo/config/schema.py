"""Configuration schema definitions.

Uses TypedDict for type safety without runtime overhead.
These types match the structure of config.toml.
"""

from typing import TypedDict


class BudgetsConfig(TypedDict, total=False):
    """Limits enforced before any exhaustive loop.

    Attributes:
        max_points: Largest q^d that may be enumerated pointwise.
        max_pairs: Largest number of ordered point pairs an oracle may scan.
        max_group: Largest isometry group that may be listed element by element.
        max_ball: Largest Cayley ball cached by word-length searches.
    """

    max_points: int
    max_pairs: int
    max_group: int
    max_ball: int


class SamplingConfig(TypedDict, total=False):
    """Monte-Carlo defaults.

    Attributes:
        seed: Top-level seed for every derived stream.
        samples: Default sample count per estimate.
        sigma_gate: Statistical gate (in standard errors) for sampled checks.
        rel_tol: Relative tolerance for floating identity checks.
    """

    seed: int
    samples: int
    sigma_gate: float
    rel_tol: float


class GraphConfig(TypedDict, total=False):
    """Graph and group verification defaults.

    Attributes:
        max_components: Number of wedge components kept from the infinite wedge.
        sample_pairs: Vertex pairs checked when a graph is too large for all pairs.
        exhaustive_pairs_limit: Above this many vertex pairs, checks sample.
    """

    max_components: int
    sample_pairs: int
    exhaustive_pairs_limit: int


class EmbeddingConfig(TypedDict, total=False):
    """Built-in embedding map parameters.

    Attributes:
        random_linear_bound: RandomLinear entries are uniform integers in
            [-bound, bound].
        random_linear_dim: Default target dimension of RandomLinear.
    """

    random_linear_bound: int
    random_linear_dim: int


class EnfloConfig(TypedDict, total=False):
    """Root configuration structure."""

    budgets: BudgetsConfig
    sampling: SamplingConfig
    graph: GraphConfig
    embedding: EmbeddingConfig
