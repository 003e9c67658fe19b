# twolayer/catalog/commands.py
import click

from ..config import grid_for, pass_config
from ..model import Representation, format_residual_record, pde_residual, sample_state
from ..utils import emit_record, write_field
from ..utils.logging import logger
from .registry import build_solution, describe_schema, list_entries, parse_params

COMPONENTS = {
    "psi1": (Representation.LAYERED, "psi1"),
    "psi2": (Representation.LAYERED, "psi2"),
    "psi_plus": (Representation.BAROTROPIC_BAROCLINIC, "psi1"),
    "psi_minus": (Representation.BAROTROPIC_BAROCLINIC, "psi2"),
}


def _catalog_epilog() -> str:
    lines = ["\b", "Solutions:"]
    lines += [f"  {entry.name:<26} {entry.provenance}" for entry in list_entries()]
    return "\n".join(lines)


catalog_cli = click.Group("catalog", help="List and evaluate the exact solutions.", epilog=_catalog_epilog())


@catalog_cli.command("list")
def list_solutions():
    """Name, provenance and parameter schema of every solution."""
    for entry in list_entries():
        flags = [flag for flag, on in (("numeric", entry.numeric), ("channel", entry.channel_compatible)) if on]
        suffix = f" [{', '.join(flags)}]" if flags else ""
        click.echo(f"{entry.name}{suffix}: {entry.provenance}")
        click.echo(f"    {describe_schema(entry) or 'no parameters'}")


@catalog_cli.command("eval")
@click.option("--solution", required=True, help="Catalog entry name.")
@click.option("--params", default=None, help="Parameter overrides, e.g. k=3,l=2.")
@click.option("--t", "t", type=float, default=0.0, show_default=True)
@click.option("--grid", "grid_size", default=None, help="NXxNY, e.g. 128x64.")
@click.option("--component", type=click.Choice(sorted(COMPONENTS)), default="psi1", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the field file here.")
@pass_config
def eval_solution_command(config, solution, params, t, grid_size, component, out):
    """Sample a solution on the grid at time t."""
    grid = grid_for(config, grid_size)
    expr = build_solution(solution, parse_params(params), config.model)
    representation, attribute = COMPONENTS[component]
    field = getattr(sample_state(expr, grid, t, representation), attribute)
    if out:
        write_field(out, field, t)
    values = field.values
    emit_record(f"solution={solution} component={component} grid={grid.label()} t={t:.17g} "
               f"min={values.min():.17g} max={values.max():.17g}")


@click.command("verify")
@click.option("--solution", required=True, help="Catalog entry name.")
@click.option("--params", default=None, help="Parameter overrides, e.g. k=3,l=2.")
@click.option("--grid", "grid_size", default=None, help="NXxNY, e.g. 64x64.")
@click.option("--dt", type=float, default=None, help="Time step of the central difference.")
@click.option("--t", "t", type=float, default=0.5, show_default=True)
@click.option("--representation", type=click.Choice([r.value for r in Representation]),
              default=Representation.LAYERED.value, show_default=True)
@click.option("--convergence", is_flag=True, help="Repeat with h and dt halved and print the ratio.")
@pass_config
def verify_command(config, solution, params, grid_size, dt, t, representation, convergence):
    """Residual of the model equations for a catalog solution."""
    grid = grid_for(config, grid_size)
    dt = dt if dt is not None else config.solver.dt
    expr = build_solution(solution, parse_params(params), config.model)
    representation = Representation(representation)

    max_res, l2_res = pde_residual(expr, config.model, grid, t, dt, representation)
    emit_record(format_residual_record(solution, grid, dt, max_res, l2_res))
    if convergence:
        fine = grid.refined(2)
        fine_max, fine_l2 = pde_residual(expr, config.model, fine, t, dt / 2, representation)
        emit_record(format_residual_record(solution, fine, dt / 2, fine_max, fine_l2))
        ratio = max_res / fine_max if fine_max > 0 else float("inf")
        logger.info(f"Residual ratio under refinement: {ratio:.3g}")
        emit_record(f"ratio={ratio:.17g}")
