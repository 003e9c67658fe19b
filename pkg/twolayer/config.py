# twolayer/config.py
import math
import re

import click
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .bvp import BoundarySetting
from .errors import ConfigError
from .fields import GridSpec
from .model import ModelParams
from .solver import SolverConfig
from .utils import load_config
from .utils.logging import logger

GRID_SIZE_RE = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")

# flat config key -> (section, field)
FLAT_KEYS = {
    "nx": ("grid", "nx"),
    "ny": ("grid", "ny"),
    "lx": ("grid", "Lx"),
    "ly": ("grid", "Ly"),
    "topology": ("grid", "topology"),
    "x0": ("grid", "x0"),
    "y0": ("grid", "y0"),
    "beta": ("model", "beta"),
    "f": ("model", "F"),
    "dt": ("solver", "dt"),
    "steps": ("solver", "steps"),
    "scheme": ("solver", "scheme"),
    "ra_filter": ("solver", "ra_filter"),
    "dealias": ("solver", "dealias"),
    "derivatives": ("solver", "derivatives"),
    "boundary": ("boundary", "kind"),
    "l": ("boundary", "L"),
    "y": ("boundary", "Y"),
    "output_every": (None, "output_every"),
    "output_dir": (None, "output_dir"),
    "seed": (None, "seed"),
}


def _default_grid():
    return GridSpec(nx=64, ny=64, Lx=2 * math.pi, Ly=2 * math.pi)


class RunConfig(BaseModel):
    """Everything a command needs besides its own options."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    grid: GridSpec = Field(default_factory=_default_grid)
    model: ModelParams = Field(default_factory=ModelParams)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    boundary: BoundarySetting = Field(default_factory=BoundarySetting)
    output_every: int = Field(default=0, ge=0)
    output_dir: str | None = None
    seed: int = 0

    @classmethod
    def from_flat(cls, values: dict) -> "RunConfig":
        """Build from flat ``key: text`` pairs as found in config files and the environment."""
        sections = {"grid": {}, "model": {}, "solver": {}, "boundary": {}}
        top = {}
        for key, value in values.items():
            if value is None:
                continue
            try:
                section, name = FLAT_KEYS[key.lower()]
            except KeyError:
                raise ConfigError(f"unknown config key '{key}'") from None
            target = top if section is None else sections[section]
            target[name] = value
        grid = {**_default_grid().model_dump(), **sections.pop("grid")}
        try:
            return cls(grid=grid, **sections, **top)
        except ValidationError as exc:
            first = exc.errors()[0]
            where = ".".join(str(part) for part in first["loc"])
            raise ConfigError(f"invalid config value for {where}: {first['msg']}") from exc

    def with_overrides(self, **overrides) -> "RunConfig":
        """Flat overrides (CLI options); ``None`` values are ignored."""
        merged = self.flat()
        merged.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig.from_flat(merged)

    def flat(self) -> dict:
        out = {}
        for key, (section, name) in FLAT_KEYS.items():
            holder = self if section is None else getattr(self, section)
            value = getattr(holder, name)
            out[key] = value.value if hasattr(value, "value") else value
        return out


def parse_grid_size(text: str) -> tuple[int, int]:
    """``"128x64"`` to ``(128, 64)``."""
    match = GRID_SIZE_RE.match(text or "")
    if not match:
        raise ConfigError(f"grid size must look like NXxNY, got {text!r}")
    return int(match.group(1)), int(match.group(2))


def load_run_config(path=None, environ=None, **overrides) -> RunConfig:
    """Defaults, then the config file, then ``TWOLAYER_*`` variables, then ``overrides``."""
    values = load_config(path, environ)
    values.update({k: v for k, v in overrides.items() if v is not None})
    config = RunConfig.from_flat(values)
    logger.debug(f"Run config: {config.flat()}")
    return config


pass_config = click.make_pass_decorator(RunConfig)


def grid_for(config: RunConfig, grid_size: str | None = None, **overrides) -> GridSpec:
    """The configured grid with an optional ``NXxNY`` size and field overrides."""
    if grid_size:
        nx, ny = parse_grid_size(grid_size)
        overrides.update(nx=nx, ny=ny)
    try:
        return GridSpec(**{**config.grid.model_dump(), **overrides})
    except ValidationError as exc:
        raise ConfigError(f"invalid grid: {exc.errors()[0]['msg']}") from exc
