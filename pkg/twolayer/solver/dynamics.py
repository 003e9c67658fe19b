# twolayer/solver/dynamics.py
"""
Time integration of the barotropic/baroclinic equations

    Q+_t + ({psi+, Q+} + {psi-, Q-}) / 2 = 0,    Q+ = lap psi+ + 2 beta y
    Q-_t + ({psi+, Q-} + {psi-, Q+}) / 2 = 0,    Q- = lap psi- - 2F psi-

Each stream function is psi = psi~ + c + a x + b y with the linear part fixed; only the grid
parts q+ = lap psi+~ and q- = lap psi-~ - 2F psi-~ are advanced. psi~ is recovered by
``invert_helmholtz`` (mu = 0 and mu = 2F) on every stage. Brackets are expanded into grid
derivatives of the tilde parts plus the constant slopes, so nothing non-periodic is ever
differentiated on a periodic axis.
"""
import numpy as np
from scipy import fft

from ..errors import GridMismatchError, NumericalInstabilityError, SolvabilityError
from ..fields import Field2D, GridSpec, Scheme, Topology, diff_array, integrate, invert_helmholtz
from ..model import LayerState, ModelParams, Representation
from ..utils.logging import logger
from .integrators import RK4, LeapfrogRA
from .models import Background, DiagnosticsRecord, SolverConfig, SolverState, TimeScheme

CFL_LIMIT = 0.5
PERIODICITY_TOLERANCE = 1e-8


def _check_grid(grid: GridSpec, cfg: SolverConfig):
    if Scheme(cfg.derivatives) == Scheme.SPECTRAL and grid.topology != Topology.DOUBLY_PERIODIC:
        raise GridMismatchError(f"spectral derivatives need a doubly periodic grid, got {grid.topology.value}")


def _d(values, grid, axis, cfg, order=1):
    return diff_array(values, grid, axis, order, cfg.derivatives)


def _helmholtz(values, grid, mu, cfg):
    return _d(values, grid, 1, cfg, 2) + _d(values, grid, 0, cfg, 2) - mu * values


def _dealias(values, grid: GridSpec):
    """Zero the upper third of the wavenumbers on each axis."""
    hat = fft.fft2(values)
    ky = np.abs(fft.fftfreq(grid.ny)) * grid.ny
    kx = np.abs(fft.fftfreq(grid.nx)) * grid.nx
    keep = (ky[:, None] < grid.ny / 3) & (kx[None, :] < grid.nx / 3)
    return np.real(fft.ifft2(hat * keep))


def _bracket(a, a_slope, b, b_slope, grid, cfg):
    """{A, B} for A = a + a_slope . (x, y), B = b + b_slope . (x, y)."""
    ax = _d(a, grid, 1, cfg) + a_slope[0]
    ay = _d(a, grid, 0, cfg) + a_slope[1]
    bx = _d(b, grid, 1, cfg) + b_slope[0]
    by = _d(b, grid, 0, cfg) + b_slope[1]
    out = ax * by - ay * bx
    if cfg.dealias and Scheme(cfg.derivatives) == Scheme.SPECTRAL:
        out = _dealias(out, grid)
    return out


def _wall_mask(grid: GridSpec):
    mask = np.zeros(grid.shape, dtype=bool)
    if not grid.periodic_y:
        mask[0, :] = mask[-1, :] = True
    if not grid.periodic_x:
        mask[:, 0] = mask[:, -1] = True
    return mask


def invert(state: SolverState, params: ModelParams, cfg: SolverConfig):
    """(psi+~, psi-~) from the grid parts of the potential vorticities."""
    plus = invert_helmholtz(state.q_plus, 0.0, cfg.derivatives, boundary=state.walls_plus)
    minus = invert_helmholtz(state.q_minus, 2 * params.F, cfg.derivatives, boundary=state.walls_minus)
    return plus.values, minus.values


def _tendency(state: SolverState, q_plus, q_minus, params: ModelParams, cfg: SolverConfig):
    grid = state.grid
    if not (np.all(np.isfinite(q_plus)) and np.all(np.isfinite(q_minus))):
        # a blown-up stage stays non-finite so ``advance`` can report it
        return np.full(grid.shape, np.nan), np.full(grid.shape, np.nan)
    current = state.model_copy(update={
        "q_plus": Field2D(grid=grid, values=q_plus),
        "q_minus": Field2D(grid=grid, values=q_minus),
    })
    psi_plus, psi_minus = invert(current, params, cfg)
    bp, bm = state.background_plus, state.background_minus
    s_plus, s_minus = (bp.a, bp.b), (bm.a, bm.b)
    # linear parts of Q+ and Q-
    Q_plus_slope = (0.0, 2 * params.beta)
    Q_minus_slope = (-2 * params.F * bm.a, -2 * params.F * bm.b)

    dq_plus = -0.5 * (_bracket(psi_plus, s_plus, q_plus, Q_plus_slope, grid, cfg)
                      + _bracket(psi_minus, s_minus, q_minus, Q_minus_slope, grid, cfg))
    dq_minus = -0.5 * (_bracket(psi_plus, s_plus, q_minus, Q_minus_slope, grid, cfg)
                       + _bracket(psi_minus, s_minus, q_plus, Q_plus_slope, grid, cfg))
    if grid.topology == Topology.DOUBLY_PERIODIC:
        # the mean of the q+ tendency vanishes identically once a+ = 0
        dq_plus = dq_plus - dq_plus.mean()
    else:
        walls = _wall_mask(grid)
        dq_plus[walls] = 0.0
        dq_minus[walls] = 0.0
    return dq_plus, dq_minus


def split_background(psi_plus, psi_minus, shifted_x, shifted_y, grid: GridSpec):
    """
    Separate linear backgrounds from sampled fields. ``shifted_x``/``shifted_y`` are the
    same fields sampled one period further along x/y (None on bounded axes).
    """
    X, Y = grid.mesh()
    backgrounds, tildes = [], []
    for k, psi in enumerate((psi_plus, psi_minus)):
        slopes = []
        for shifted, length in ((shifted_x, grid.Lx), (shifted_y, grid.Ly)):
            if shifted is None:
                slopes.append(0.0)
                continue
            jump = (shifted[k] - psi) / length
            scale = max(1.0, float(np.max(np.abs(psi))) / length)
            if np.max(np.abs(jump - jump.mean())) > PERIODICITY_TOLERANCE * scale:
                raise GridMismatchError("field is not periodic on the grid up to a linear background")
            slopes.append(float(jump.mean()))
        tilde = psi - slopes[0] * X - slopes[1] * Y
        c = 0.0
        if k == 0 and grid.topology == Topology.DOUBLY_PERIODIC:
            c = float(tilde.mean())
            tilde = tilde - c
        backgrounds.append(Background(c=c, a=slopes[0], b=slopes[1]))
        tildes.append(tilde)
    return tildes, backgrounds


def from_streamfunctions(psi_plus_tilde, psi_minus_tilde, backgrounds, grid: GridSpec, t: float,
                         params: ModelParams, cfg: SolverConfig) -> SolverState:
    _check_grid(grid, cfg)
    bp, bm = backgrounds
    if grid.topology == Topology.DOUBLY_PERIODIC and abs(bp.a) > PERIODICITY_TOLERANCE:
        raise SolvabilityError(
            f"a uniform meridional barotropic wind (a+ = {bp.a:.6g}) makes Q+ drift uniformly; "
            "it has no periodic representation"
        )
    walls = grid.topology != Topology.DOUBLY_PERIODIC
    return SolverState(
        t=t,
        q_plus=Field2D(grid=grid, values=_helmholtz(psi_plus_tilde, grid, 0.0, cfg)),
        q_minus=Field2D(grid=grid, values=_helmholtz(psi_minus_tilde, grid, 2 * params.F, cfg)),
        background_plus=bp,
        background_minus=bm,
        walls_plus=Field2D(grid=grid, values=psi_plus_tilde) if walls else None,
        walls_minus=Field2D(grid=grid, values=psi_minus_tilde) if walls else None,
    )


def state_from_solution(solution, grid: GridSpec, t: float, params: ModelParams,
                        cfg: SolverConfig) -> SolverState:
    """Sample an analytic solution, splitting off its linear background on periodic axes."""
    X, Y = grid.mesh()

    def pm(dx=0.0, dy=0.0):
        psi1, psi2 = solution.evaluate(t, X + dx, Y + dy)
        return psi1 + psi2, psi1 - psi2

    plus, minus = pm()
    shifted_x = pm(dx=grid.Lx) if grid.periodic_x else None
    shifted_y = pm(dy=grid.Ly) if grid.periodic_y else None
    tildes, backgrounds = split_background(plus, minus, shifted_x, shifted_y, grid)
    logger.debug(f"Background of {solution.name}: {backgrounds}")
    return from_streamfunctions(*tildes, backgrounds, grid, t, params, cfg)


def state_from_layers(state: LayerState, params: ModelParams, cfg: SolverConfig,
                      backgrounds=(Background(), Background())) -> SolverState:
    """A LayerState whose fields, minus ``backgrounds``, are grid functions."""
    pm = state.barotropic_baroclinic()
    X, Y = state.grid.mesh()
    tildes = [pm.psi1.values - backgrounds[0].evaluate(X, Y), pm.psi2.values - backgrounds[1].evaluate(X, Y)]
    return from_streamfunctions(*tildes, backgrounds, state.grid, state.t, params, cfg)


def to_layers(state: SolverState, params: ModelParams, cfg: SolverConfig) -> LayerState:
    plus, minus = invert(state, params, cfg)
    X, Y = state.grid.mesh()
    plus = plus + state.background_plus.evaluate(X, Y)
    minus = minus + state.background_minus.evaluate(X, Y)
    return LayerState(
        t=state.t,
        psi1=Field2D(grid=state.grid, values=plus),
        psi2=Field2D(grid=state.grid, values=minus),
        representation=Representation.BAROTROPIC_BAROCLINIC,
    ).layered()


def _rhs(t, y, state, params, cfg):
    return _tendency(state, y[0], y[1], params, cfg)


def make_integrator(cfg: SolverConfig):
    if TimeScheme(cfg.scheme) == TimeScheme.LEAPFROG_RA:
        return LeapfrogRA(cfg.ra_filter)
    return RK4()


def advance(state: SolverState, params: ModelParams, cfg: SolverConfig, integrator=None,
            step_index: int = 0) -> SolverState:
    """One dt with ``integrator`` (a fresh one for ``cfg.scheme`` if omitted)."""
    integrator = integrator or make_integrator(cfg)
    integrator.set_rhs_func(_rhs, state, params, cfg)
    q_plus, q_minus = integrator.step(state.t, (state.q_plus.values, state.q_minus.values), cfg.dt)
    if not (np.all(np.isfinite(q_plus)) and np.all(np.isfinite(q_minus))):
        logger.error(f"💥 Non-finite potential vorticity after step {step_index + 1}")
        raise NumericalInstabilityError(
            f"non-finite values at step {step_index + 1} (t = {state.t + cfg.dt:.6g})",
            last_healthy_step=step_index,
        )
    return state.model_copy(update={
        "t": state.t + cfg.dt,
        "q_plus": Field2D(grid=state.grid, values=q_plus),
        "q_minus": Field2D(grid=state.grid, values=q_minus),
    })


def step(state, params: ModelParams, cfg: SolverConfig, integrator=None):
    """
    Advance a LayerState (grid-function stream functions) or a SolverState by one dt.
    Returns the same kind of state it was given.

    Without ``integrator`` every call starts a fresh scheme, so a leapfrog call is an RK4 starter
    step. Pass one integrator from ``make_integrator`` to successive calls to continue a leapfrog run.
    """
    if isinstance(state, SolverState):
        return advance(state, params, cfg, integrator)
    solver_state = state_from_layers(state, params, cfg)
    return to_layers(advance(solver_state, params, cfg, integrator), params, cfg)


def max_velocity(state: SolverState, params: ModelParams, cfg: SolverConfig) -> float:
    plus, minus = invert(state, params, cfg)
    speeds = []
    for psi, bg in ((plus, state.background_plus), (minus, state.background_minus)):
        u = _d(psi, state.grid, 0, cfg) + bg.b
        v = _d(psi, state.grid, 1, cfg) + bg.a
        speeds.append(float(np.max(np.hypot(u, v))))
    # layer velocities are half sums and differences of the modal ones
    return 0.5 * (speeds[0] + speeds[1])


def check_cfl(state: SolverState, params: ModelParams, cfg: SolverConfig) -> float:
    h = min(state.grid.hx, state.grid.hy)
    number = cfg.dt * max_velocity(state, params, cfg) / h
    if number > CFL_LIMIT:
        logger.warning(f"⚠️ CFL number {number:.3g} exceeds {CFL_LIMIT}; reduce dt")
    return number


def diagnostics(state, params: ModelParams, cfg: SolverConfig | None = None, step_index: int = 0) -> DiagnosticsRecord:
    """
    Energy 1/2 int(|grad psi1|^2 + |grad psi2|^2 + F (psi1 - psi2)^2), layer enstrophies
    1/2 int (Q_i - beta y)^2 and the wall circulations: the x-mean of d(psi1 + psi2)/dy on the
    first and last grid rows.
    """
    cfg = cfg or SolverConfig()
    if isinstance(state, LayerState):
        state = state_from_layers(state, params, cfg)
    grid = state.grid
    X, Y = grid.mesh()
    plus, minus = invert(state, params, cfg)
    bp, bm = state.background_plus, state.background_minus

    def grad(psi, bg):
        return _d(psi, grid, 1, cfg) + bg.a, _d(psi, grid, 0, cfg) + bg.b

    (px, py), (mx, my) = grad(plus, bp), grad(minus, bm)
    # layer gradients: psi1 = (psi+ + psi-)/2, psi2 = (psi+ - psi-)/2
    u1, v1 = 0.5 * (px + mx), 0.5 * (py + my)
    u2, v2 = 0.5 * (px - mx), 0.5 * (py - my)
    psi_minus = minus + bm.evaluate(X, Y)
    energy_density = 0.5 * (u1**2 + v1**2 + u2**2 + v2**2 + params.F * psi_minus**2)

    Q_minus_part = state.q_minus.values - 2 * params.F * (bm.a * X + bm.b * Y)
    q1 = 0.5 * (state.q_plus.values + Q_minus_part)
    q2 = 0.5 * (state.q_plus.values - Q_minus_part)

    def field(values):
        return Field2D(grid=grid, values=values)

    return DiagnosticsRecord(
        step=step_index,
        t=state.t,
        energy=integrate(field(energy_density)),
        enstrophy1=integrate(field(0.5 * q1**2)),
        enstrophy2=integrate(field(0.5 * q2**2)),
        circulation_south=float(np.mean(py[0, :])),
        circulation_north=float(np.mean(py[-1, :])),
    )


def boost(state: SolverState, c: float, params: ModelParams, cfg: SolverConfig) -> SolverState:
    """
    Galilean boost f(t) = c t: fields move by c t in x and psi+ gains -2 c y. Needs a grid
    periodic in x; the shift is applied spectrally.
    """
    grid = state.grid
    if not grid.periodic_x:
        raise GridMismatchError("a Galilean boost needs a grid periodic in x")
    shift = c * state.t
    plus, minus = invert(state, params, cfg)
    kx = 2 * np.pi * fft.fftfreq(grid.nx, d=grid.hx)
    phase = np.exp(-1j * kx * shift)[None, :]

    def moved(values):
        return np.real(fft.ifft(fft.fft(values, axis=1) * phase, axis=1))

    bp, bm = state.background_plus, state.background_minus
    # a (x - c t) leaves the constants -a c t behind
    plus_tilde = moved(plus) - bp.a * shift
    minus_tilde = moved(minus) - bm.a * shift
    backgrounds = (Background(c=bp.c, a=bp.a, b=bp.b - 2 * c), bm)
    if grid.topology == Topology.DOUBLY_PERIODIC:
        mean = float(plus_tilde.mean())
        plus_tilde = plus_tilde - mean
        backgrounds = (Background(c=bp.c + mean, a=bp.a, b=bp.b - 2 * c), bm)
    logger.debug(f"Boosted state at t={state.t} by c={c}")
    return from_streamfunctions(plus_tilde, minus_tilde, backgrounds, grid, state.t, params, cfg)
