"""Config command implementation.

Manages the budgets, sampling defaults and graph limits stored in the
enflo configuration file.
"""

import typer
from typing_extensions import Annotated

import enflo.config as settings_store
from enflo.config import DEFAULTS, get_setting, init_config, load_config, set_config_value
from enflo.config.paths import BUDGET_POINTS_ENV, budget_points_override

app = typer.Typer(help="Manage budgets, sampling defaults and graph limits")


def _source(config: dict, section: str, key: str) -> str:
    """Where a resolved value came from: env, file or default."""
    if (section, key) == ("budgets", "max_points") and budget_points_override() is not None:
        return f"env {BUDGET_POINTS_ENV}"
    if config.get(section, {}).get(key) is not None:
        return "file"
    return "default"


@app.command()
def init(
    force: Annotated[
        bool, typer.Option("--force", "-f", help="Overwrite existing config")
    ] = False,
):
    """Write the commented template config file."""
    path = settings_store.CONFIG_FILE
    if init_config(overwrite=force):
        typer.echo(f"Created config file: {path}")
        return

    typer.echo(f"Config already exists at {path}")
    typer.echo("Use --force to overwrite.")


@app.command()
def show():
    """Display every effective setting and where it comes from.

    Values come from the environment, then the config file, then built-in
    defaults.
    """
    config = load_config()
    if not config:
        typer.echo(f"No config file at {settings_store.CONFIG_FILE}; showing built-in defaults.")
        typer.echo()

    try:
        for section, keys in DEFAULTS.items():
            typer.echo(f"[{section}]")
            for key in keys:
                value = get_setting(config, section, key)
                typer.echo(f"  {key} = {value}  # {_source(config, section, key)}")
            typer.echo()
    except ValueError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(2)


@app.command("set")
def set_value(
    key: Annotated[
        str,
        typer.Argument(help="Configuration key (dot notation, e.g., 'budgets.max_points')"),
    ],
    value: Annotated[str, typer.Argument(help="Configuration value")],
):
    """Set a configuration value using dot notation.

    Examples:
        enflo config set budgets.max_points 200000
        enflo config set sampling.sigma_gate 5
    """
    try:
        set_config_value(key, value)
    except ValueError as e:
        typer.echo(f"Invalid value: {e}", err=True)
        raise typer.Exit(2)

    section, field = key.split(".")
    stored = load_config()[section][field]
    typer.echo(f"Set {key} = {stored}")
