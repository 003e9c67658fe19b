# twolayer/solver/trajectory.py
import csv
import os

import numpy as np

from ..catalog.models import SolutionExpr
from ..errors import UsageError
from ..fields import GridSpec
from ..model import LayerState, ModelParams
from ..utils.loader import write_field
from ..utils.logging import logger
from .dynamics import advance, check_cfl, diagnostics, make_integrator, state_from_layers, state_from_solution, to_layers
from .models import DIAGNOSTICS_HEADER, SolverConfig, SolverState, Trajectory


def write_diagnostics_csv(path, records):
    directory = os.path.dirname(os.fspath(path))
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as outfile:
        writer = csv.writer(outfile, lineterminator="\n")
        writer.writerow(DIAGNOSTICS_HEADER)
        for record in records:
            writer.writerow(record.as_row())
    logger.info(f"💾 Diagnostics written to {path}")


def _snapshot(state, params, cfg, output_dir, index):
    layers = to_layers(state, params, cfg)
    if output_dir is not None:
        write_field(os.path.join(output_dir, f"psi1_{index:06d}.txt"), layers.psi1, layers.t)
        write_field(os.path.join(output_dir, f"psi2_{index:06d}.txt"), layers.psi2, layers.t)
    return layers


def initial_state(initial, params: ModelParams, cfg: SolverConfig, grid: GridSpec | None = None,
                  t0: float = 0.0) -> SolverState:
    if isinstance(initial, SolverState):
        return initial
    if isinstance(initial, LayerState):
        return state_from_layers(initial, params, cfg)
    if isinstance(initial, SolutionExpr):
        if grid is None:
            raise UsageError("a grid is needed to start from an analytic solution")
        return state_from_solution(initial, grid, t0, params, cfg)
    raise UsageError(f"cannot start a run from {type(initial).__name__}")


def run(initial, params: ModelParams, cfg: SolverConfig, output_every: int = 0,
        grid: GridSpec | None = None, t0: float = 0.0, output_dir=None) -> Trajectory:
    """
    Advance ``cfg.steps`` steps from a LayerState, SolverState or analytic solution (sampled
    at t0 on ``grid``). Snapshots and diagnostics are taken at step 0, every ``output_every``
    steps and at the last step; with ``output_dir`` they are also written as field files and
    ``diagnostics.csv``.
    """
    state = initial_state(initial, params, cfg, grid, t0)
    check_cfl(state, params, cfg)
    integrator = make_integrator(cfg)
    trajectory = Trajectory()

    def record(index):
        trajectory.states.append(_snapshot(state, params, cfg, output_dir, index))
        trajectory.records.append(diagnostics(state, params, cfg, index))

    logger.info(f"🚀 Running {cfg.steps} {cfg.scheme.value} steps of dt={cfg.dt:g} on {state.grid.label()}")
    record(0)
    for index in range(cfg.steps):
        state = advance(state, params, cfg, integrator, index)
        done = index + 1
        if done == cfg.steps or (output_every and done % output_every == 0):
            record(done)
    trajectory.steps_taken = cfg.steps
    trajectory.solver_state = state

    if output_dir is not None:
        write_diagnostics_csv(os.path.join(output_dir, "diagnostics.csv"), trajectory.records)
    logger.info(f"✅ Finished at t={state.t:.6g}")
    return trajectory


def mode_phase(state: LayerState, k: float, l: float, component: str = "plus") -> complex:
    """Projection of psi+ (or psi-) on exp(i (k x + l y))."""
    pm = state.barotropic_baroclinic()
    values = pm.psi1.values if component == "plus" else pm.psi2.values
    X, Y = state.grid.mesh()
    return complex(np.sum(values * np.exp(-1j * (k * X + l * Y))))


def fit_phase_speed(states, k: float, l: float, component: str = "plus") -> float:
    """
    Zonal phase speed -omega/k of the (k, l) mode, with omega the slope of a straight-line fit
    to the unwrapped phase of the mode over the snapshot times.
    """
    states = states.states if isinstance(states, Trajectory) else list(states)
    if len(states) < 2:
        raise UsageError("fitting a phase speed needs at least two snapshots")
    times = np.array([s.t for s in states])
    phases = np.unwrap(np.angle([mode_phase(s, k, l, component) for s in states]))
    omega = np.polyfit(times, phases, 1)[0]
    return float(-omega / k)
