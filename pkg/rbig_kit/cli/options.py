"""Options and helpers shared by the subcommands."""
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import click
from pydantic import ValidationError
from rich.console import Console

from rbig_kit.config import FitConfig, get_config, load_fit_config
from rbig_kit.sdk.exceptions import ConfigurationError
from rbig_kit.storage import Dataset, load_csv

console = Console(stderr=True)

OPEN_UNIT_INTERVAL = click.FloatRange(0.0, 1.0, min_open=True, max_open=True)


def input_options(fn: Callable) -> Callable:
    """--in and --has-header."""
    fn = click.option("--has-header", is_flag=True, default=False, help="First CSV line holds column names")(fn)
    fn = click.option(
        "--in",
        "input_path",
        required=True,
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        help="Input CSV, one sample per row",
    )(fn)
    return fn


def fit_options(fn: Callable) -> Callable:
    """Options that build a FitConfig."""
    options = [
        click.option("--threads", type=click.IntRange(min=1), default=None, help="Worker thread cap"),
        click.option("--alpha", type=OPEN_UNIT_INTERVAL, default=None, help="Gaussianity test significance level"),
        click.option("--tolerance", type=float, default=None, help="Stop tolerance in bits (default 0.005·d)"),
        click.option("--max-iterations", type=click.IntRange(min=1), default=None, help="Upper bound on layers"),
        click.option("--seed", type=click.IntRange(min=0), default=None, help="Seed for every random stream"),
        click.option(
            "--rotation",
            type=click.Choice(["pca", "random", "ica"], case_sensitive=False),
            default=None,
            help="Rotation family",
        ),
        click.option(
            "--config",
            "config_path",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            default=None,
            help="YAML fit configuration; flags override its values",
        ),
    ]
    for option in options:
        fn = option(fn)
    return fn


def build_fit_config(
    config_path: Optional[Path],
    rotation: Optional[str],
    seed: Optional[int],
    max_iterations: Optional[int],
    tolerance: Optional[float],
    alpha: Optional[float],
) -> FitConfig:
    """FitConfig from the YAML file (or the environment defaults) plus flag overrides."""
    overrides: Dict[str, Any] = {
        "rotation_kind": rotation,
        "seed": seed,
        "max_iterations": max_iterations,
        "stop_tolerance_bits": tolerance,
        "gaussianity_alpha": alpha,
    }
    if config_path is not None:
        return load_fit_config(config_path, **overrides)

    base = get_config().fit.model_dump()
    base.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return FitConfig(**base)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid fit options: {e}") from e


def read_dataset(input_path: Path, has_header: bool) -> Dataset:
    dataset = load_csv(input_path, has_header=has_header)
    if dataset.rejected_rows:
        console.print(f"[yellow]Rejected {dataset.rejected_rows} rows with non-finite values[/yellow]")
    return dataset


def output_option(required: bool = True) -> Callable:
    return click.option(
        "--out",
        "output_path",
        required=required,
        type=click.Path(dir_okay=False, writable=True, path_type=Path),
        help="Output file",
    )


def model_option(fn: Callable) -> Callable:
    return click.option(
        "--model",
        "model_path",
        required=True,
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        help="Model file written by fit",
    )(fn)
