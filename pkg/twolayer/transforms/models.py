# twolayer/transforms/models.py
from dataclasses import dataclass, field
from enum import Enum

from ..algebra import ExpPoly
from .functions import as_time_function


@dataclass(frozen=True)
class PointTransform:
    """
    Finite point symmetry
        t~ = eps1 t + T0,  x~ = eps1 x + f(t),  y~ = eps2 y + Y0,
        psi-~ = eps3 psi- + Psi0,  psi+~ = eps2 psi+ - 2 eps1 eps2 f'(t) y + g(t).
    f and g are functions of the original time t.
    """
    eps1: int = 1
    eps2: int = 1
    eps3: int = 1
    T0: float = 0.0
    Y0: float = 0.0
    Psi0: float = 0.0
    f: object = field(default_factory=ExpPoly.zero)
    g: object = field(default_factory=ExpPoly.zero)

    def __post_init__(self):
        for name in ("eps1", "eps2", "eps3"):
            value = getattr(self, name)
            if value not in (1, -1):
                raise ValueError(f"{name} must be +1 or -1, got {value}")
            object.__setattr__(self, name, int(value))
        for name in ("T0", "Y0", "Psi0"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "f", as_time_function(self.f))
        object.__setattr__(self, "g", as_time_function(self.g))

    def is_exact(self) -> bool:
        """True when f and g are exponential polynomials."""
        return isinstance(self.f, ExpPoly) and isinstance(self.g, ExpPoly)

    def describe(self) -> str:
        return (f"eps=({self.eps1},{self.eps2},{self.eps3}) T0={self.T0:g} Y0={self.Y0:g} "
                f"Psi0={self.Psi0:g} f={self.f} g={self.g}")


class DiscreteSymmetry(str, Enum):
    MIRROR_TX = "mirror_tx"
    MIRROR_Y = "mirror_y"
    LAYER_SWAP = "layer_swap"


# the same involutions written in layered and in barotropic/baroclinic variables
DISCRETE_DICTIONARY = {
    DiscreteSymmetry.MIRROR_TX: {
        "layered": "(t,x,y,psi1,psi2) -> (-t,-x,y,psi1,psi2)",
        "barotropic_baroclinic": "(t,x,y,psi+,psi-) -> (-t,-x,y,psi+,psi-)",
        "point": {"eps1": -1},
    },
    DiscreteSymmetry.MIRROR_Y: {
        "layered": "(t,x,y,psi1,psi2) -> (t,x,-y,-psi1,-psi2)",
        "barotropic_baroclinic": "(t,x,y,psi+,psi-) -> (t,x,-y,-psi+,-psi-)",
        "point": {"eps2": -1, "eps3": -1},
    },
    DiscreteSymmetry.LAYER_SWAP: {
        "layered": "(t,x,y,psi1,psi2) -> (t,x,y,psi2,psi1)",
        "barotropic_baroclinic": "(t,x,y,psi+,psi-) -> (t,x,y,psi+,-psi-)",
        "point": {"eps3": -1},
    },
}
