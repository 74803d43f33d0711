"""
CLI commands for one-class scoring and denoising.
"""
from pathlib import Path

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
from rbig_kit.sdk.exceptions import ModelFileError
from rbig_kit.storage import format_value, load_model, load_model_file, save_model, write_csv


@click.command("oneclass-fit")
@input_options
@output_option()
@click.option("--nu", type=float, required=True, help="Fraction of training rows to reject")
@fit_options
def oneclass_fit_cmd(
    input_path: Path,
    has_header: bool,
    output_path: Path,
    nu: float,
    config_path,
    rotation,
    seed,
    max_iterations,
    tolerance,
    alpha,
    threads,
):
    """Fit a one-class model (density plus log-density threshold)."""
    from rbig_kit.tasks import fit_one_class

    config = build_fit_config(config_path, rotation, seed, max_iterations, tolerance, alpha)
    m = fit_one_class(read_dataset(input_path, has_header).values, nu, config, threads=threads)
    save_model(m.density_model, output_path, one_class={"nu": m.nu, "log_threshold": m.log_threshold})
    console.print(f"[green]✓[/green] threshold {m.log_threshold:.4f} nats at nu={m.nu} → {output_path}")


@click.command("oneclass-score")
@model_option
@input_options
@output_option()
def oneclass_score_cmd(model_path: Path, input_path: Path, has_header: bool, output_path: Path):
    """Score rows against a one-class model: log_density and accept (1/0)."""
    from rbig_kit.tasks import OneClassModel, score

    loaded = load_model_file(model_path)
    if loaded.one_class is None:
        raise ModelFileError(f"{model_path} is not a one-class model (no one_class block)")
    m = OneClassModel(
        density_model=loaded.model,
        log_threshold=loaded.one_class["log_threshold"],
        nu=loaded.one_class["nu"],
    )
    scores = score(m, read_dataset(input_path, has_header).values)
    with open(output_path, "w", encoding="utf-8") as handle:
        handle.write("log_density,accept\n")
        for value, accepted in zip(scores.log_density, scores.accept):
            handle.write(f"{format_value(value)},{int(accepted)}\n")


@click.command("denoise")
@model_option
@input_options
@output_option()
@click.option(
    "--sigma",
    type=float,
    required=True,
    multiple=True,
    help="Noise standard deviation; give once, or once per dimension",
)
@click.option("--n-posterior", type=click.IntRange(min=100), default=8000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--threads", type=click.IntRange(min=1), default=None)
def denoise_cmd(
    model_path: Path,
    input_path: Path,
    has_header: bool,
    output_path: Path,
    sigma,
    n_posterior: int,
    seed: int,
    threads,
):
    """Posterior-mean denoising of noisy rows under the model as prior."""
    from rbig_kit.tasks import NoiseModel, denoise

    result = denoise(
        load_model(model_path),
        read_dataset(input_path, has_header).values,
        NoiseModel(sigma_n=list(sigma)),
        n_posterior=n_posterior,
        seed=seed,
        threads=threads,
    )
    write_csv(output_path, result.values)
    if result.n_fallback:
        console.print(f"[yellow]{result.n_fallback} rows kept their noisy value[/yellow]")
