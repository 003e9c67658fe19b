# twolayer/solver/models.py
from dataclasses import dataclass, field
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from ..fields import Field2D, Scheme


class TimeScheme(str, Enum):
    RK4 = "rk4"
    LEAPFROG_RA = "leapfrog_ra"


class SolverConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    dt: float = Field(default=1e-2, gt=0)
    steps: int = Field(default=100, ge=0)
    scheme: TimeScheme = TimeScheme.RK4
    # Robert-Asselin coefficient, leapfrog only
    ra_filter: float = Field(default=0.05, ge=0, le=0.1)
    # two-thirds truncation of the advection terms, spectral derivatives only
    dealias: bool = False
    derivatives: Scheme = Scheme.FD2


@dataclass(frozen=True)
class Background:
    """Linear stream-function background c + a x + b y carried outside the grid fields."""
    c: float = 0.0
    a: float = 0.0
    b: float = 0.0

    def evaluate(self, X, Y):
        return self.c + self.a * X + self.b * Y


class SolverState(BaseModel):
    """
    Prognostic state in barotropic/baroclinic form: the grid parts q+ = lap psi+~ and
    q- = lap psi-~ - 2F psi-~ of the potential vorticities, plus the fixed linear backgrounds
    of psi+ and psi-. On bounded axes the wall values of ``walls_plus``/``walls_minus`` are
    the Dirichlet data of psi+~ and psi-~.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t: float = 0.0
    q_plus: Field2D
    q_minus: Field2D
    background_plus: Background = Background()
    background_minus: Background = Background()
    walls_plus: Field2D | None = None
    walls_minus: Field2D | None = None

    @property
    def grid(self):
        return self.q_plus.grid


@dataclass(frozen=True)
class DiagnosticsRecord:
    step: int
    t: float
    energy: float
    enstrophy1: float
    enstrophy2: float
    circulation_south: float
    circulation_north: float

    def as_row(self) -> list[str]:
        values = (self.t, self.energy, self.enstrophy1, self.enstrophy2,
                  self.circulation_south, self.circulation_north)
        return [str(self.step)] + [format(v, ".17g") for v in values]


DIAGNOSTICS_HEADER = ["step", "t", "energy", "enstrophy1", "enstrophy2", "circ_south", "circ_north"]


@dataclass
class Trajectory:
    """Snapshots (LayerStates) at the output steps, with their diagnostics."""
    states: list = field(default_factory=list)
    records: list = field(default_factory=list)
    steps_taken: int = 0
    solver_state: object = None

    @property
    def final(self):
        return self.states[-1]

    @property
    def times(self) -> list[float]:
        return [s.t for s in self.states]
