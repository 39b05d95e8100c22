"""Default configuration template.

This template is written to ~/.config/enflo/config.toml
when running `enflo config init`.
"""

CONFIG_TEMPLATE = """\
# Enflo Configuration

[budgets]
# Largest q^d enumerated pointwise (override with ENFLO_BUDGET_POINTS)
max_points = 100000
max_pairs = 100000000
max_group = 10000
max_ball = 300000

[sampling]
seed = 0
samples = 10000
sigma_gate = 4.0
rel_tol = 1e-9

[graph]
max_components = 4
sample_pairs = 200
exhaustive_pairs_limit = 1000

[embedding]
# RandomLinear entries are uniform integers in [-bound, bound]
random_linear_bound = 3
random_linear_dim = 3
"""
