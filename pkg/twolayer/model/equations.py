# twolayer/model/equations.py
"""
Potential vorticities, tendencies and residuals of the two-layer model.

Layered form:
    Q1 = lap psi1 + beta y - F (psi1 - psi2),   Q1_t + {psi1, Q1} = 0
    Q2 = lap psi2 + beta y + F (psi1 - psi2),   Q2_t + {psi2, Q2} = 0
Barotropic/baroclinic form (psi+ = psi1 + psi2, psi- = psi1 - psi2):
    Q+ = lap psi+ + 2 beta y,   Q+_t + ({psi+, Q+} + {psi-, Q-}) / 2 = 0
    Q- = lap psi- - 2 F psi-,   Q-_t + ({psi+, Q-} + {psi-, Q+}) / 2 = 0

The beta y background is never differentiated on the grid: {psi, q + c y} = {psi, q} + c psi_x,
which keeps the bracket exact on periodic grids where y itself is not periodic.
"""
import numpy as np

from ..fields import Field2D, GridSpec, Scheme, coordinate_fields, ddx, interior, laplacian, poisson_bracket
from .models import LayerState, ModelParams, Representation

RESIDUAL_HALO = 2


def relative_vorticities(state: LayerState, params: ModelParams, scheme: Scheme = Scheme.FD2):
    """PV without the planetary part: (q1, q2) or (q+, q-), with Q = q + (beta y or 2 beta y or 0)."""
    a, b = state.psi1, state.psi2
    if state.representation == Representation.LAYERED:
        coupling = params.F * (a - b)
        return laplacian(a, scheme) - coupling, laplacian(b, scheme) + coupling
    return laplacian(a, scheme), laplacian(b, scheme) - 2 * params.F * b


def planetary_coefficients(representation: Representation, params: ModelParams) -> tuple[float, float]:
    """Coefficients c of the c*y background carried by each PV."""
    if Representation(representation) == Representation.LAYERED:
        return params.beta, params.beta
    return 2 * params.beta, 0.0


def potential_vorticity(state: LayerState, params: ModelParams, scheme: Scheme = Scheme.FD2):
    q1, q2 = relative_vorticities(state, params, scheme)
    _, Y = coordinate_fields(state.grid)
    c1, c2 = planetary_coefficients(state.representation, params)
    return q1 + c1 * Y, q2 + c2 * Y


def _bracket(psi: Field2D, q: Field2D, c: float, scheme: Scheme) -> Field2D:
    out = poisson_bracket(psi, q, scheme)
    if c:
        out = out + c * ddx(psi, scheme)
    return out


def tendency_from_vorticity(state: LayerState, q1: Field2D, q2: Field2D, params: ModelParams,
                            scheme: Scheme = Scheme.FD2):
    c1, c2 = planetary_coefficients(state.representation, params)
    a, b = state.psi1, state.psi2
    if state.representation == Representation.LAYERED:
        return -_bracket(a, q1, c1, scheme), -_bracket(b, q2, c2, scheme)
    plus = _bracket(a, q1, c1, scheme) + _bracket(b, q2, c2, scheme)
    minus = _bracket(a, q2, c2, scheme) + _bracket(b, q1, c1, scheme)
    return -0.5 * plus, -0.5 * minus


def tendency(state: LayerState, params: ModelParams, scheme: Scheme = Scheme.FD2):
    """Time derivatives of the two PVs in the state's own representation."""
    q1, q2 = relative_vorticities(state, params, scheme)
    return tendency_from_vorticity(state, q1, q2, params, scheme)


def sample_state(solution, grid: GridSpec, t: float,
                 representation: Representation = Representation.LAYERED) -> LayerState:
    """Evaluate an analytic solution on the grid nodes."""
    X, Y = grid.mesh()
    psi1, psi2 = solution.evaluate(t, X, Y)
    state = LayerState(
        t=t,
        psi1=Field2D(grid=grid, values=np.broadcast_to(psi1, grid.shape)),
        psi2=Field2D(grid=grid, values=np.broadcast_to(psi2, grid.shape)),
    )
    return state.as_representation(representation)


def pde_residual(solution, params: ModelParams, grid: GridSpec, t: float, dt: float,
                 representation: Representation = Representation.LAYERED) -> tuple[float, float]:
    """
    Residual of the model equations for an analytic solution.

    The solution is sampled on a copy of ``grid`` padded with a two-node halo, so every grid
    node gets centred second-order differences; Q_t is a central difference over t +- dt.
    Returns the maximum and the RMS over the grid nodes, taken across both equations.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    padded = grid.padded(RESIDUAL_HALO)
    states = [sample_state(solution, padded, s, representation) for s in (t - dt, t, t + dt)]
    before, now, after = (relative_vorticities(s, params) for s in states)

    rates = tendency_from_vorticity(states[1], now[0], now[1], params)
    residuals = []
    for k in range(2):
        q_t = (after[k].values - before[k].values) / (2 * dt)
        residuals.append(interior(q_t - rates[k].values, RESIDUAL_HALO))
    stacked = np.stack(residuals)
    return float(np.max(np.abs(stacked))), float(np.sqrt(np.mean(stacked**2)))


def format_residual_record(name: str, grid: GridSpec, dt: float, max_res: float, l2_res: float) -> str:
    h = max(grid.hx, grid.hy)
    return (f"solution={name} grid={grid.label()} h={h:.17g} dt={dt:.17g} "
            f"max_res={max_res:.17g} l2_res={l2_res:.17g}")
