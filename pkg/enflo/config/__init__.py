"""Configuration management module.

Handles loading, saving, and accessing the enflo configuration.
Config is stored at ~/.config/enflo/config.toml

Usage:
    from enflo.config import load_config, get_setting

    config = load_config()
    budget = get_setting(config, "budgets", "max_points")
"""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import tomli_w

from .paths import CONFIG_FILE, budget_points_override, ensure_config_dir
from .schema import EnfloConfig
from .template import CONFIG_TEMPLATE

__all__ = [
    "DEFAULTS",
    "load_config",
    "save_config",
    "init_config",
    "get_setting",
    "set_config_value",
    "CONFIG_FILE",
]

# Built-in values used when neither the config file nor the environment
# provides a setting.
DEFAULTS: EnfloConfig = {
    "budgets": {
        "max_points": 100_000,
        "max_pairs": 100_000_000,
        "max_group": 10_000,
        "max_ball": 300_000,
    },
    "sampling": {
        "seed": 0,
        "samples": 10_000,
        "sigma_gate": 4.0,
        "rel_tol": 1e-9,
    },
    "graph": {
        "max_components": 4,
        "sample_pairs": 200,
        "exhaustive_pairs_limit": 1000,
    },
    "embedding": {
        "random_linear_bound": 3,
        "random_linear_dim": 3,
    },
}

# Module-level cache for loaded config.
# Avoids repeated disk reads during a single CLI invocation.
_cached_config: EnfloConfig | None = None


def load_config(*, force_reload: bool = False) -> EnfloConfig:
    """Load configuration from disk.

    Returns empty dict if config file doesn't exist.
    Uses module-level caching to avoid repeated disk reads.

    Args:
        force_reload: Bypass cache and read from disk (useful after saving).

    Returns:
        The configuration dictionary.
    """
    global _cached_config

    if _cached_config is not None and not force_reload:
        return _cached_config

    if not CONFIG_FILE.exists():
        _cached_config = {}
        return _cached_config

    with open(CONFIG_FILE, "rb") as f:
        _cached_config = tomllib.load(f)

    return _cached_config


def save_config(config: EnfloConfig) -> None:
    """Save configuration to disk.

    Creates config directory if needed. Updates the module cache.

    Args:
        config: The configuration dictionary to save.
    """
    global _cached_config

    ensure_config_dir()

    with open(CONFIG_FILE, "wb") as f:
        tomli_w.dump(config, f)

    _cached_config = config


def init_config(*, overwrite: bool = False) -> bool:
    """Initialize config directory and create template config file.

    Args:
        overwrite: If True, overwrite existing config file.

    Returns:
        True if config was created, False if it already existed.
    """
    ensure_config_dir()

    if CONFIG_FILE.exists() and not overwrite:
        return False

    CONFIG_FILE.write_text(CONFIG_TEMPLATE)
    return True


def get_setting(config: EnfloConfig, section: str, key: str) -> int | float:
    """Resolve one setting: environment, then config file, then DEFAULTS.

    Only ``budgets.max_points`` has an environment override
    (ENFLO_BUDGET_POINTS).

    Raises:
        KeyError: If the setting is unknown.
        ValueError: If the environment override is malformed.
    """
    default = DEFAULTS[section][key]
    if (section, key) == ("budgets", "max_points"):
        override = budget_points_override()
        if override is not None:
            return override
    value = config.get(section, {}).get(key)
    return default if value is None else value


def _split_key(key: str) -> tuple[str, str]:
    section, _, field = key.partition(".")
    if section not in DEFAULTS or field not in DEFAULTS[section]:
        raise ValueError(f"Unknown config key: {key}")
    return section, field


def set_config_value(key: str, value: str) -> None:
    """Set a configuration value using dot notation.

    The value is converted to the type of the built-in default, so
    ``sampling.sigma_gate 5`` is stored as 5.0.

    Examples:
        set_config_value("budgets.max_points", "200000")
        set_config_value("sampling.sigma_gate", "5")

    Raises:
        ValueError: If the key is unknown or the value cannot be converted.
    """
    section, field = _split_key(key)
    converted = type(DEFAULTS[section][field])(value)

    config = load_config(force_reload=True)
    config.setdefault(section, {})[field] = converted
    save_config(config)
