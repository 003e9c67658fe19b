# twolayer/solver/__init__.py
from .models import Background, DiagnosticsRecord, SolverConfig, SolverState, TimeScheme, Trajectory
from .integrators import RK4, LeapfrogRA
from .dynamics import (
    advance,
    boost,
    check_cfl,
    diagnostics,
    invert,
    make_integrator,
    state_from_layers,
    state_from_solution,
    step,
    to_layers,
)
from .trajectory import fit_phase_speed, initial_state, mode_phase, run, write_diagnostics_csv
