# twolayer/bvp/models.py
import math
from dataclasses import dataclass, field
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import BoundarySettingError


class BoundaryKind(str, Enum):
    # walls at y = 0 and y = Y; no sidewalls
    INFINITE = "infinite"
    # walls at y = 0 and y = Y; x in [-L, L) periodic
    PERIODIC_CHANNEL = "periodic_channel"
    # walls on all four sides of [-L, L] x [0, Y]
    LIMITED_RECTANGLE = "limited_rectangle"


class BoundarySetting(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: BoundaryKind = BoundaryKind.PERIODIC_CHANNEL
    L: float = Field(default=math.pi, gt=0)
    Y: float = Field(default=math.pi, gt=0)

    @model_validator(mode="after")
    def _finite_extent(self):
        if not math.isfinite(self.Y):
            raise BoundarySettingError("the channel width Y must be finite")
        if self.kind != BoundaryKind.INFINITE and not math.isfinite(self.L):
            raise BoundarySettingError(f"{self.kind.value} requires a finite L")
        return self


@dataclass(frozen=True)
class BoundaryReport:
    """One residual per boundary condition, keyed like ``psi1_x_south`` or ``circ2_rate_north``."""
    setting: BoundarySetting
    conditions: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.conditions.values(), default=0.0)

    def format(self) -> str:
        return " ".join(f"{name}={value:.17g}" for name, value in self.conditions.items())


@dataclass(frozen=True)
class PreservationReport:
    preserved: bool
    mode: str
    witness: dict = field(default_factory=dict)

    def format(self) -> str:
        verdict = "preserved" if self.preserved else "violated"
        details = " ".join(f"{key}={value}" for key, value in self.witness.items())
        return f"{verdict} (mode={self.mode}) {details}".rstrip()
