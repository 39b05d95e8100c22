"""Where enflo keeps its settings, and the one environment override.

The config file is $XDG_CONFIG_HOME/enflo/config.toml, falling back to
~/.config/enflo/config.toml.
"""

import os
from pathlib import Path

BUDGET_POINTS_ENV = "ENFLO_BUDGET_POINTS"


def _config_home() -> Path:
    xdg = os.environ.get("XDG_CONFIG_HOME")
    return Path(xdg) if xdg else Path.home() / ".config"


CONFIG_DIR = _config_home() / "enflo"
CONFIG_FILE = CONFIG_DIR / "config.toml"


def ensure_config_dir() -> Path:
    """Create the config directory if needed and return it."""
    CONFIG_DIR.mkdir(parents=True, exist_ok=True)
    return CONFIG_DIR


def budget_points_override() -> int | None:
    """Value of ENFLO_BUDGET_POINTS, or None when unset or empty.

    Raises:
        ValueError: If the variable is set to something other than a
            positive integer.
    """
    raw = os.environ.get(BUDGET_POINTS_ENV, "").strip()
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_POINTS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{BUDGET_POINTS_ENV} must be positive, got {value}")
    return value
