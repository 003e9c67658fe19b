# twolayer/__init__.py
import click

from .errors import TwoLayerError
from .utils import bind_run, configure_logger, logger
from .utils.records import JSON_FLAG


class TwoLayerGroup(click.Group):
    """Root group: library errors become their exit codes."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (click.exceptions.Exit, click.exceptions.Abort, click.ClickException):
            raise
        except TwoLayerError as e:
            logger.error(f"❌ {type(e).__name__}: {e}")
            ctx.exit(e.exit_code)
        except Exception as e:
            logger.error("💥 An unexpected error occurred: %s", str(e), exc_info=True)
            ctx.exit(1)


def create_cli() -> click.Group:
    """Create and configure the command-line application."""
    from .config import load_run_config

    @click.group(cls=TwoLayerGroup)
    @click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                  help="Plain-text 'key = value' configuration file.")
    @click.option("--seed", type=int, default=None, help="Seed of the randomized checks.")
    @click.option("--json", "json_records", is_flag=True, help="Print records as one JSON object per line.")
    @click.version_option(package_name="twolayer")
    @click.pass_context
    def cli(ctx, config_path, seed, json_records):
        """Checks of the two-layer quasi-geostrophic model, its symmetries and exact solutions."""
        ctx.obj = load_run_config(config_path, seed=seed)
        bind_run(ctx.invoked_subcommand, ctx.obj.seed)
        ctx.meta[JSON_FLAG] = json_records

    # Catalog and verification
    from .catalog.commands import catalog_cli, verify_command
    cli.add_command(catalog_cli)
    cli.add_command(verify_command)

    # Time integration
    from .solver.commands import simulate_command
    cli.add_command(simulate_command)

    # Symmetries
    from .transforms.commands import transform_command
    cli.add_command(transform_command)

    from .algebra.commands import algebra_cli
    cli.add_command(algebra_cli)

    # Boundary value problems
    from .bvp.commands import bvp_cli
    cli.add_command(bvp_cli)

    configure_logger()

    return cli
