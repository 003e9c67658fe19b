# twolayer/bvp/__init__.py
from .models import BoundaryKind, BoundaryReport, BoundarySetting, PreservationReport
from .conditions import bc_residual, check_grid, wall_circulations
from .preservation import (
    empirical_check,
    predicate_check,
    probe_grid,
    probe_solution,
    transform_preserves_bvp,
)
