# twolayer/transforms/commands.py
import functools

import click

from ..algebra import parse_exppoly
from ..catalog import build_solution, parse_params
from ..config import grid_for, pass_config
from ..errors import UsageError
from ..model import format_residual_record, pde_residual
from ..utils import emit_record
from .group import apply_discrete, apply_to_solution
from .models import DiscreteSymmetry, PointTransform


def transform_options(command):
    """The parameters of a point transformation as command options."""
    options = [
        click.option("--eps1", type=int, default=1, show_default=True, help="Time/x reflection, +1 or -1."),
        click.option("--eps2", type=int, default=1, show_default=True, help="y reflection, +1 or -1."),
        click.option("--eps3", type=int, default=1, show_default=True, help="psi- sign, +1 or -1."),
        click.option("--T0", "T0", type=float, default=0.0, show_default=True, help="Time shift."),
        click.option("--Y0", "Y0", type=float, default=0.0, show_default=True, help="y shift."),
        click.option("--Psi0", "Psi0", type=float, default=0.0, show_default=True, help="psi- shift."),
        click.option("--f", "f", default="0", show_default=True, help="x shift f(t) as an exp-poly."),
        click.option("--g", "g", default="0", show_default=True, help="psi+ gauge g(t) as an exp-poly."),
    ]
    return functools.reduce(lambda cmd, option: option(cmd), reversed(options), command)


def transform_from_options(eps1, eps2, eps3, T0, Y0, Psi0, f, g) -> PointTransform:
    try:
        return PointTransform(eps1=eps1, eps2=eps2, eps3=eps3, T0=T0, Y0=Y0, Psi0=Psi0,
                              f=parse_exppoly(f), g=parse_exppoly(g))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


@click.command("transform")
@transform_options
@click.option("--discrete", type=click.Choice([s.value for s in DiscreteSymmetry]), default=None,
              help="Apply a discrete symmetry after the point transformation.")
@click.option("--solution", required=True, help="Catalog entry to transform.")
@click.option("--solution-params", default=None, help="Parameter overrides, e.g. k=3,l=2.")
@click.option("--grid", "grid_size", default=None, help="NXxNY, e.g. 64x64.")
@click.option("--dt", type=float, default=None, help="Time step of the central difference.")
@click.option("--t", "t", type=float, default=0.5, show_default=True)
@pass_config
def transform_command(config, eps1, eps2, eps3, T0, Y0, Psi0, f, g, discrete, solution,
                      solution_params, grid_size, dt, t):
    """Map a catalog solution by a symmetry and check the image still solves the model."""
    tr = transform_from_options(eps1, eps2, eps3, T0, Y0, Psi0, f, g)
    grid = grid_for(config, grid_size)
    dt = dt if dt is not None else config.solver.dt
    original = build_solution(solution, parse_params(solution_params), config.model)
    image = apply_to_solution(tr, original)
    if discrete:
        image = apply_discrete(discrete, image)

    emit_record(f"transform {tr.describe()}" + (f" discrete={discrete}" if discrete else ""))
    for name, expr in ((solution, original), (image.name, image)):
        max_res, l2_res = pde_residual(expr, config.model, grid, t, dt)
        emit_record(format_residual_record(name, grid, dt, max_res, l2_res))
