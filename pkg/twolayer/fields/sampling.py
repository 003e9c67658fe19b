# twolayer/fields/sampling.py
from collections.abc import Callable

import numpy as np

from .models import Field2D, GridSpec


def coordinate_fields(grid: GridSpec) -> tuple[Field2D, Field2D]:
    X, Y = grid.mesh()
    return Field2D(grid=grid, values=X), Field2D(grid=grid, values=Y)


def sample(grid: GridSpec, fn: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> Field2D:
    """Evaluate ``fn(x, y)`` on the grid nodes."""
    X, Y = grid.mesh()
    return Field2D(grid=grid, values=np.broadcast_to(fn(X, Y), grid.shape))


def interior(values: np.ndarray, halo: int) -> np.ndarray:
    if halo == 0:
        return values
    return values[halo:-halo, halo:-halo]
