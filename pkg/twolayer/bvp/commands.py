# twolayer/bvp/commands.py
import click
from pydantic import ValidationError

from ..catalog import build_solution, parse_params
from ..config import pass_config
from ..errors import BoundarySettingError
from ..model import sample_state
from ..transforms.commands import transform_from_options, transform_options
from ..utils import emit_record
from .conditions import bc_residual
from .models import BoundaryKind, BoundarySetting
from .preservation import probe_grid, transform_preserves_bvp

SETTING_ALIASES = {
    "infinite": BoundaryKind.INFINITE,
    "periodic": BoundaryKind.PERIODIC_CHANNEL,
    "periodic_channel": BoundaryKind.PERIODIC_CHANNEL,
    "limited": BoundaryKind.LIMITED_RECTANGLE,
    "limited_rectangle": BoundaryKind.LIMITED_RECTANGLE,
}

bvp_cli = click.Group("bvp", help="Boundary conditions of the channel and rectangle problems.")


def _setting(config, setting, L, Y) -> BoundarySetting:
    base = config.boundary
    kind = SETTING_ALIASES[setting] if setting else base.kind
    try:
        return BoundarySetting(kind=kind, L=base.L if L is None else L, Y=base.Y if Y is None else Y)
    except ValidationError as exc:
        raise BoundarySettingError(f"invalid boundary setting: {exc.errors()[0]['msg']}") from exc


def setting_options(command):
    command = click.option("--Y", "Y", type=float, default=None, help="Channel width.")(command)
    command = click.option("--L", "L", type=float, default=None, help="Half length in x.")(command)
    return click.option("--setting", type=click.Choice(sorted(SETTING_ALIASES)), default=None,
                        help="Domain type (defaults to the configured boundary).")(command)


@bvp_cli.command("check")
@setting_options
@transform_options
@click.option("--mode", type=click.Choice(["auto", "predicate", "empirical"]), default="auto", show_default=True)
@pass_config
def check_command(config, setting, L, Y, eps1, eps2, eps3, T0, Y0, Psi0, f, g, mode):
    """Whether a point transformation maps the boundary value problem to itself."""
    bvp = _setting(config, setting, L, Y)
    tr = transform_from_options(eps1, eps2, eps3, T0, Y0, Psi0, f, g)
    report = transform_preserves_bvp(tr, bvp, mode, config.model)
    emit_record(f"setting={bvp.kind.value} {report.format()}")


@bvp_cli.command("residual")
@setting_options
@click.option("--solution", required=True, help="Catalog entry to test at the walls.")
@click.option("--params", default=None, help="Parameter overrides, e.g. k=2,n=1.")
@click.option("--t", "t", type=float, default=0.0, show_default=True)
@click.option("--dt", type=float, default=1e-3, show_default=True, help="Interval of the circulation rate.")
@click.option("--nodes", type=(click.IntRange(min=8), click.IntRange(min=8)), default=None,
              help="Grid nodes NX NY.")
@pass_config
def residual_command(config, setting, L, Y, solution, params, t, dt, nodes):
    """Boundary residuals of a catalog solution on the domain of the setting."""
    bvp = _setting(config, setting, L, Y)
    grid = probe_grid(bvp)
    if nodes:
        grid = grid.model_copy(update={"nx": nodes[0], "ny": nodes[1]})
    expr = build_solution(solution, parse_params(params), config.model)
    report = bc_residual(sample_state(expr, grid, t + dt), bvp, sample_state(expr, grid, t), dt)
    emit_record(f"solution={solution} setting={bvp.kind.value} grid={grid.label()} t={t:.17g} "
               f"max_res={report.max_residual:.17g} {report.format()}")
