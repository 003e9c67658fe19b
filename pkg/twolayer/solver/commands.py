# twolayer/solver/commands.py
import click

from ..catalog import build_solution, parse_params
from ..config import grid_for, pass_config
from ..fields import Topology
from .models import DIAGNOSTICS_HEADER, TimeScheme
from .trajectory import run


@click.command("simulate")
@click.option("--solution", required=True, help="Catalog entry giving the initial state.")
@click.option("--params", default=None, help="Parameter overrides, e.g. k=3,l=2.")
@click.option("--grid", "grid_size", default=None, help="NXxNY, e.g. 64x64.")
@click.option("--topology", type=click.Choice([t.value for t in Topology if t != Topology.RECTANGLE]),
              default=None, help="Grid topology (defaults to the configured one).")
@click.option("--dt", type=float, default=None)
@click.option("--steps", type=click.IntRange(min=0), default=None)
@click.option("--scheme", type=click.Choice([s.value for s in TimeScheme]), default=None)
@click.option("--t0", type=float, default=0.0, show_default=True, help="Time at which the solution is sampled.")
@click.option("--output-dir", type=click.Path(file_okay=False), default=None,
              help="Write psi1/psi2 snapshots and diagnostics.csv here.")
@click.option("--output-every", type=click.IntRange(min=0), default=None, help="Snapshot interval in steps.")
@pass_config
def simulate_command(config, solution, params, grid_size, topology, dt, steps, scheme, t0, output_dir,
                     output_every):
    """Integrate the model from a catalog solution and print the diagnostics."""
    config = config.with_overrides(dt=dt, steps=steps, scheme=scheme, output_dir=output_dir,
                                   output_every=output_every, topology=topology)
    grid = grid_for(config, grid_size)
    initial = build_solution(solution, parse_params(params), config.model)
    trajectory = run(initial, config.model, config.solver, output_every=config.output_every,
                     grid=grid, t0=t0, output_dir=config.output_dir)
    click.echo(",".join(DIAGNOSTICS_HEADER))
    for record in trajectory.records:
        click.echo(",".join(record.as_row()))
