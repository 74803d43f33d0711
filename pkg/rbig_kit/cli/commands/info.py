"""
CLI commands for information measures and the normality test.
"""
import json
from pathlib import Path

import click

from rbig_kit.cli.options import (
    OPEN_UNIT_INTERVAL,
    build_fit_config,
    console,
    fit_options,
    input_options,
    read_dataset,
)
from rbig_kit.storage import format_value


@click.command("mi")
@input_options
@fit_options
def mi_cmd(
    input_path: Path, has_header: bool, config_path, rotation, seed, max_iterations, tolerance, alpha, threads
):
    """Multi-information between the columns, in bits."""
    from rbig_kit.infotheory import multi_information

    config = build_fit_config(config_path, rotation, seed, max_iterations, tolerance, alpha)
    data = read_dataset(input_path, has_header).values
    click.echo(format_value(multi_information(data, config, threads=threads)))


@click.command("negentropy")
@input_options
@click.option("--per-dimension", is_flag=True, default=False, help="One marginal negentropy per column")
@click.option("--joint", is_flag=True, default=False, help="Joint negentropy from a full fit")
@fit_options
def negentropy_cmd(
    input_path: Path,
    has_header: bool,
    per_dimension: bool,
    joint: bool,
    config_path,
    rotation,
    seed,
    max_iterations,
    tolerance,
    alpha,
    threads,
):
    """Marginal negentropy of the data in bits (summed unless --per-dimension)."""
    from rbig_kit.infotheory import marginal_negentropies, negentropy

    if per_dimension and joint:
        raise click.UsageError("--per-dimension and --joint are exclusive")
    data = read_dataset(input_path, has_header).values
    config = build_fit_config(config_path, rotation, seed, max_iterations, tolerance, alpha)

    if joint:
        click.echo(format_value(negentropy(data, config, threads=threads)))
        return
    estimates = marginal_negentropies(data, policy=config.bins)
    if any(estimate.low_confidence for estimate in estimates):
        console.print(
            f"[yellow]Only {estimates[0].n_samples} samples: negentropy estimates are low confidence[/yellow]"
        )
    if per_dimension:
        for estimate in estimates:
            click.echo(format_value(estimate.value))
    else:
        click.echo(format_value(sum(estimate.value for estimate in estimates)))


@click.command("gausstest")
@input_options
@click.option("--alpha", type=OPEN_UNIT_INTERVAL, default=0.05, show_default=True, help="Significance level")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--resamples", type=click.IntRange(min=10), default=200, show_default=True)
@click.option("--threads", type=click.IntRange(min=1), default=None)
def gausstest_cmd(input_path: Path, has_header: bool, alpha: float, seed: int, resamples: int, threads):
    """Energy test of standard multivariate normality; prints the verdict as JSON."""
    from rbig_kit.infotheory import gaussianity_test

    verdict = gaussianity_test(
        read_dataset(input_path, has_header).values,
        alpha,
        resamples=resamples,
        seed=seed,
        threads=threads,
    )
    click.echo(json.dumps(verdict.model_dump(), sort_keys=True))
