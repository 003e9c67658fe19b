# twolayer/fields/__init__.py
from .models import Field2D, GridSpec, Scheme, Topology
from .operators import (
    ddx,
    ddy,
    diff_array,
    gradient,
    integrate,
    invert_helmholtz,
    laplacian,
    poisson_bracket,
)
from .sampling import coordinate_fields, interior, sample
