# twolayer/bvp/conditions.py
"""
Boundary conditions of the channel problem:

    psi_i,x = 0  and  d/dt of the x-mean of psi_i,y = 0   on y = 0 and y = Y,

and for the limited rectangle additionally

    psi_i,y = 0  and  d/dt of the y-mean of psi_i,x = 0   on x = -L and x = L.
"""
import math

import numpy as np
from scipy.integrate import trapezoid

from ..errors import BoundarySettingError, UsageError
from ..fields import GridSpec, Topology, diff_array
from ..model import LayerState
from .models import BoundaryKind, BoundaryReport, BoundarySetting

EXTENT_TOLERANCE = 1e-9

EXPECTED_TOPOLOGY = {
    BoundaryKind.INFINITE: Topology.CHANNEL,
    BoundaryKind.PERIODIC_CHANNEL: Topology.CHANNEL,
    BoundaryKind.LIMITED_RECTANGLE: Topology.RECTANGLE,
}


def _close(a, b):
    return math.isclose(a, b, rel_tol=EXTENT_TOLERANCE, abs_tol=EXTENT_TOLERANCE)


def check_grid(grid: GridSpec, setting: BoundarySetting):
    """The grid must carry the walls of the setting (a channel grid is a window of the infinite domain)."""
    expected = EXPECTED_TOPOLOGY[setting.kind]
    if grid.topology != expected:
        raise BoundarySettingError(
            f"{setting.kind.value} needs a {expected.value} grid, got {grid.topology.value}"
        )
    if not (_close(grid.y0, 0.0) and _close(grid.Ly, setting.Y)):
        raise BoundarySettingError(f"walls must sit at y = 0 and y = {setting.Y}, grid spans "
                                   f"[{grid.y0}, {grid.y0 + grid.Ly}]")
    if setting.kind != BoundaryKind.INFINITE and not _close(grid.Lx, 2 * setting.L):
        raise BoundarySettingError(f"{setting.kind.value} needs Lx = 2L = {2 * setting.L}, got {grid.Lx}")
    if setting.kind == BoundaryKind.LIMITED_RECTANGLE and not _close(grid.x0, -setting.L):
        raise BoundarySettingError(f"the rectangle starts at x = -L = {-setting.L}, grid starts at {grid.x0}")


def _mean_along(values, spacing, periodic):
    if periodic:
        return float(np.mean(values))
    return float(trapezoid(values, dx=spacing) / (spacing * (values.size - 1)))


def wall_circulations(state: LayerState):
    """x-mean of psi_i,y on the south and north rows, per layer."""
    grid = state.grid
    out = {}
    for i, psi in enumerate((state.psi1, state.psi2), start=1):
        dy = diff_array(psi.values, grid, 0, 1)
        out[f"circ{i}_south"] = _mean_along(dy[0, :], grid.hx, grid.periodic_x)
        out[f"circ{i}_north"] = _mean_along(dy[-1, :], grid.hx, grid.periodic_x)
        if not grid.periodic_x:
            dx = diff_array(psi.values, grid, 1, 1)
            out[f"circ{i}_west"] = _mean_along(dx[:, 0], grid.hy, False)
            out[f"circ{i}_east"] = _mean_along(dx[:, -1], grid.hy, False)
    return out


def bc_residual(state: LayerState, setting: BoundarySetting, prev_state: LayerState | None = None,
                dt: float | None = None) -> BoundaryReport:
    """
    Max |psi_i,x| on the walls y = 0, Y and, with ``prev_state`` dt earlier, |change of
    circulation|/dt per wall; the rectangle adds the x = -L, L analogues.
    """
    state = state.layered()
    grid = state.grid
    check_grid(grid, setting)
    conditions = {}
    for i, psi in enumerate((state.psi1, state.psi2), start=1):
        dx = diff_array(psi.values, grid, 1, 1)
        conditions[f"psi{i}_x_south"] = float(np.max(np.abs(dx[0, :])))
        conditions[f"psi{i}_x_north"] = float(np.max(np.abs(dx[-1, :])))
        if setting.kind == BoundaryKind.LIMITED_RECTANGLE:
            dy = diff_array(psi.values, grid, 0, 1)
            conditions[f"psi{i}_y_west"] = float(np.max(np.abs(dy[:, 0])))
            conditions[f"psi{i}_y_east"] = float(np.max(np.abs(dy[:, -1])))

    if prev_state is not None:
        if dt is None or dt <= 0:
            raise UsageError("the circulation-rate condition needs dt > 0")
        prev_state = prev_state.layered()
        if prev_state.grid != grid:
            raise BoundarySettingError("both states must share one grid")
        now, before = wall_circulations(state), wall_circulations(prev_state)
        for name, value in now.items():
            layer, wall = name.split("_")
            conditions[f"{layer}_rate_{wall}"] = abs(value - before[name]) / dt
    return BoundaryReport(setting=setting, conditions=conditions)
