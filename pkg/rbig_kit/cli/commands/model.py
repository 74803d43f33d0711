"""
CLI commands that fit a model or evaluate one.
"""
import csv
from pathlib import Path
from typing import Optional

import click

from rbig_kit.cli.options import (
    build_fit_config,
    console,
    fit_options,
    input_options,
    model_option,
    output_option,
    read_dataset,
)
from rbig_kit.storage import format_value, load_model, save_model, write_csv

TRACE_COLUMNS = ["iteration", "jm_bits", "cumulative_dj_bits", "gauss_stat", "gauss_accept"]


@click.command("fit")
@input_options
@output_option()
@fit_options
def fit_cmd(
    input_path: Path,
    has_header: bool,
    output_path: Path,
    config_path,
    rotation,
    seed,
    max_iterations,
    tolerance,
    alpha,
    threads,
):
    """Fit a Gaussianization model to a CSV dataset."""
    from rbig_kit.flow import fit

    config = build_fit_config(config_path, rotation, seed, max_iterations, tolerance, alpha)
    dataset = read_dataset(input_path, has_header)
    model = fit(dataset.values, config, threads=threads)
    save_model(model, output_path)

    status = "[green]converged[/green]" if model.trace.converged else "[yellow]stopped at max_iterations[/yellow]"
    console.print(
        f"{status}: {model.n_layers} layers, cumulative ΔJ {model.trace.cumulative_dj_bits:.4f} bits → {output_path}"
    )


@click.command("transform")
@model_option
@input_options
@output_option()
def transform_cmd(model_path: Path, input_path: Path, has_header: bool, output_path: Path):
    """Map data rows to the Gaussian domain."""
    from rbig_kit.flow import transform

    model = load_model(model_path)
    write_csv(output_path, transform(model, read_dataset(input_path, has_header).values))


@click.command("invert")
@model_option
@input_options
@output_option()
def invert_cmd(model_path: Path, input_path: Path, has_header: bool, output_path: Path):
    """Map Gaussian-domain rows back to the data domain."""
    from rbig_kit.flow import inverse_transform

    model = load_model(model_path)
    write_csv(output_path, inverse_transform(model, read_dataset(input_path, has_header).values))


@click.command("sample")
@model_option
@click.option("-n", "--count", type=click.IntRange(min=0), required=True, help="Number of samples")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--truncate", type=float, default=None, help="Redraw latent coordinates beyond ±truncate")
@output_option()
def sample_cmd(model_path: Path, count: int, seed: int, truncate: Optional[float], output_path: Path):
    """Synthesize samples from a model."""
    from rbig_kit.tasks import synthesize

    write_csv(output_path, synthesize(load_model(model_path), count, seed, truncate=truncate))


@click.command("density")
@model_option
@input_options
@output_option(required=False)
@click.option("--summary", is_flag=True, default=False, help="Print the mean log-likelihood in nats")
def density_cmd(model_path: Path, input_path: Path, has_header: bool, output_path: Optional[Path], summary: bool):
    """Log-density (nats) of each row."""
    from rbig_kit.flow import log_density

    if output_path is None and not summary:
        raise click.UsageError("density needs --out, --summary or both")
    model = load_model(model_path)
    values = log_density(model, read_dataset(input_path, has_header).values)
    if output_path is not None:
        write_csv(output_path, values, column_names=["log_density"])
    if summary:
        click.echo(format_value(float(values.mean())))


@click.command("trace-export")
@model_option
@output_option()
def trace_export_cmd(model_path: Path, output_path: Path):
    """Write the fit trace as plot-ready CSV."""
    trace = load_model(model_path).trace
    with open(output_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        for record in trace.records:
            writer.writerow(
                [
                    record.iteration,
                    format_value(record.jm_bits),
                    format_value(record.cumulative_dj_bits),
                    format_value(record.gauss_stat),
                    int(record.gauss_accept),
                ]
            )
