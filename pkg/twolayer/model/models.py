# twolayer/model/models.py
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import GridMismatchError
from ..fields import Field2D


class ModelParams(BaseModel):
    """Rossby parameter and internal rotational Froude number, both positive."""
    model_config = ConfigDict(frozen=True)

    beta: float = Field(default=1.0, gt=0)
    F: float = Field(default=1.0, gt=0)


class Representation(str, Enum):
    LAYERED = "layered"
    # psi1 holds psi+ = psi1 + psi2, psi2 holds psi- = psi1 - psi2
    BAROTROPIC_BAROCLINIC = "barotropic_baroclinic"


class LayerState(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float = 0.0
    psi1: Field2D
    psi2: Field2D
    representation: Representation = Representation.LAYERED

    @model_validator(mode="after")
    def _one_grid(self):
        if self.psi1.grid != self.psi2.grid:
            raise GridMismatchError("both stream functions of a LayerState must share one grid")
        return self

    @property
    def grid(self):
        return self.psi1.grid

    def layered(self) -> "LayerState":
        if self.representation == Representation.LAYERED:
            return self
        plus, minus = self.psi1, self.psi2
        return LayerState(t=self.t, psi1=0.5 * (plus + minus), psi2=0.5 * (plus - minus),
                          representation=Representation.LAYERED)

    def barotropic_baroclinic(self) -> "LayerState":
        if self.representation == Representation.BAROTROPIC_BAROCLINIC:
            return self
        return LayerState(t=self.t, psi1=self.psi1 + self.psi2, psi2=self.psi1 - self.psi2,
                          representation=Representation.BAROTROPIC_BAROCLINIC)

    def as_representation(self, representation: Representation) -> "LayerState":
        if Representation(representation) == Representation.LAYERED:
            return self.layered()
        return self.barotropic_baroclinic()
