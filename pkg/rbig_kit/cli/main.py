"""
Main CLI entry point for rbig-kit.
"""
import json
from typing import Optional

import click

from rbig_kit import __version__
from rbig_kit.config import get_config
from rbig_kit.logging_setup import LOG_FORMATS, configure_logging
from rbig_kit.sdk.exceptions import RbigError


class RbigGroup(click.Group):
    """Command group that turns library errors into one machine-readable line."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except RbigError as e:
            line = json.dumps({"type": type(e).__name__, "message": str(e)})
            click.echo(f"error: {line}", err=True)
            ctx.exit(1)


@click.group(cls=RbigGroup)
@click.version_option(version=__version__, prog_name="rbig-kit")
@click.option("--log-level", default=None, help="Log level (default from RBIG_LOG_LEVEL or INFO)")
@click.option(
    "--log-format",
    type=click.Choice(LOG_FORMATS),
    default=None,
    help="Log format (default from RBIG_LOG_FORMAT or text)",
)
def cli(log_level: Optional[str], log_format: Optional[str]):
    """
    rbig-kit: rotation-based iterative Gaussianization.

    Fit invertible Gaussianizing transforms to CSV data, then evaluate
    densities, draw samples, estimate information measures, score
    one-class models and denoise.
    """
    config = get_config()
    configure_logging(log_level or config.log_level, log_format or config.log_format)


from rbig_kit.cli.commands.model import (  # noqa: E402
    density_cmd,
    fit_cmd,
    invert_cmd,
    sample_cmd,
    trace_export_cmd,
    transform_cmd,
)

cli.add_command(fit_cmd)
cli.add_command(transform_cmd)
cli.add_command(invert_cmd)
cli.add_command(sample_cmd)
cli.add_command(density_cmd)
cli.add_command(trace_export_cmd)

from rbig_kit.cli.commands.info import gausstest_cmd, mi_cmd, negentropy_cmd  # noqa: E402

cli.add_command(mi_cmd)
cli.add_command(negentropy_cmd)
cli.add_command(gausstest_cmd)

from rbig_kit.cli.commands.tasks import (  # noqa: E402
    denoise_cmd,
    oneclass_fit_cmd,
    oneclass_score_cmd,
)

cli.add_command(oneclass_fit_cmd)
cli.add_command(oneclass_score_cmd)
cli.add_command(denoise_cmd)


if __name__ == "__main__":
    cli()
