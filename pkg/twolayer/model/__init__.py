# twolayer/model/__init__.py
from .models import LayerState, ModelParams, Representation
from .equations import (
    format_residual_record,
    pde_residual,
    planetary_coefficients,
    potential_vorticity,
    relative_vorticities,
    sample_state,
    tendency,
    tendency_from_vorticity,
)
