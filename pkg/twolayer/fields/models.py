# twolayer/fields/models.py
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import GridMismatchError

MIN_NODES = 8


class Topology(str, Enum):
    DOUBLY_PERIODIC = "doubly_periodic"
    # periodic in x, rigid walls at y=y0 and y=y0+Ly
    CHANNEL = "channel"
    # rigid walls on all four sides
    RECTANGLE = "rectangle"


class Scheme(str, Enum):
    FD2 = "fd2"
    SPECTRAL = "spectral"


class GridSpec(BaseModel):
    """
    Uniform grid. Periodic axes hold n nodes with spacing L/n; bounded axes hold n nodes
    including both walls, spacing L/(n-1). Arrays are indexed ``values[j, i]`` (row = constant y).
    """
    model_config = ConfigDict(frozen=True)

    nx: int = Field(ge=MIN_NODES)
    ny: int = Field(ge=MIN_NODES)
    Lx: float = Field(gt=0)
    Ly: float = Field(gt=0)
    topology: Topology = Topology.DOUBLY_PERIODIC
    x0: float = 0.0
    y0: float = 0.0

    @property
    def periodic_x(self) -> bool:
        return self.topology != Topology.RECTANGLE

    @property
    def periodic_y(self) -> bool:
        return self.topology == Topology.DOUBLY_PERIODIC

    @property
    def hx(self) -> float:
        return self.Lx / self.nx if self.periodic_x else self.Lx / (self.nx - 1)

    @property
    def hy(self) -> float:
        return self.Ly / self.ny if self.periodic_y else self.Ly / (self.ny - 1)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.ny, self.nx)

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.hx * np.arange(self.nx)

    @property
    def y(self) -> np.ndarray:
        return self.y0 + self.hy * np.arange(self.ny)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x, self.y, indexing="xy")

    def refined(self, factor: int = 2) -> "GridSpec":
        """Same domain with ``factor`` times finer spacing."""
        nx = self.nx * factor if self.periodic_x else (self.nx - 1) * factor + 1
        ny = self.ny * factor if self.periodic_y else (self.ny - 1) * factor + 1
        return self.model_copy(update={"nx": nx, "ny": ny})

    def padded(self, halo: int) -> "GridSpec":
        """Non-periodic grid extending this one by ``halo`` nodes on every side."""
        return GridSpec(
            nx=self.nx + 2 * halo,
            ny=self.ny + 2 * halo,
            Lx=self.hx * (self.nx + 2 * halo - 1),
            Ly=self.hy * (self.ny + 2 * halo - 1),
            topology=Topology.RECTANGLE,
            x0=self.x0 - halo * self.hx,
            y0=self.y0 - halo * self.hy,
        )

    def label(self) -> str:
        return f"{self.nx}x{self.ny}"


class Field2D(BaseModel):
    """Immutable array of finite values on a grid."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: GridSpec
    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def _as_array(cls, v):
        arr = np.array(v, dtype=float, copy=True)
        if not np.all(np.isfinite(arr)):
            bad = int(np.count_nonzero(~np.isfinite(arr)))
            raise ValueError(f"field has {bad} non-finite values")
        arr.flags.writeable = False
        return arr

    @model_validator(mode="after")
    def _shape_matches(self):
        if self.values.shape != self.grid.shape:
            raise ValueError(f"values shape {self.values.shape} does not match grid shape {self.grid.shape}")
        return self

    @classmethod
    def zeros(cls, grid: GridSpec) -> "Field2D":
        return cls(grid=grid, values=np.zeros(grid.shape))

    @classmethod
    def constant(cls, grid: GridSpec, value: float) -> "Field2D":
        return cls(grid=grid, values=np.full(grid.shape, float(value)))

    def _other(self, other):
        if isinstance(other, Field2D):
            if other.grid != self.grid:
                raise GridMismatchError(f"grids differ: {self.grid} vs {other.grid}")
            return other.values
        return other

    def __add__(self, other):
        return Field2D(grid=self.grid, values=self.values + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Field2D(grid=self.grid, values=self.values - self._other(other))

    def __rsub__(self, other):
        return Field2D(grid=self.grid, values=self._other(other) - self.values)

    def __mul__(self, other):
        return Field2D(grid=self.grid, values=self.values * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Field2D(grid=self.grid, values=self.values / self._other(other))

    def __neg__(self):
        return Field2D(grid=self.grid, values=-self.values)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def mean(self) -> float:
        return float(np.mean(self.values))
