# twolayer/utils/loader.py
import os
import re

import numpy as np
from dotenv import dotenv_values

from ..errors import ConfigError
from .logging import logger
from .validator import check_config_keys

HEADER_RE = re.compile(r"(\w+)=(\S+)")
ENV_PREFIX = "TWOLAYER_"


def _g17(v: float) -> str:
    return format(float(v), ".17g")


def write_field(path, field, t: float = 0.0):
    """Write a Field2D in the text field format: one header line, then ny rows of nx values."""
    g = field.grid
    header = (f"nx={g.nx} ny={g.ny} Lx={_g17(g.Lx)} Ly={_g17(g.Ly)} "
              f"t={_g17(t)} topology={g.topology.value}")
    if g.x0 or g.y0:
        header += f" x0={_g17(g.x0)} y0={_g17(g.y0)}"
    directory = os.path.dirname(os.fspath(path))
    if directory:
        os.makedirs(directory, exist_ok=True)
    np.savetxt(path, field.values, fmt="%.17g", header=header, comments="# ")
    logger.info(f"💾 Field written to {path}")


def read_field(path):
    """Read a field file back into ``(Field2D, t)``."""
    from ..fields import Field2D, GridSpec

    with open(path, "r", encoding="utf-8") as infile:
        first = infile.readline()
    if not first.startswith("#"):
        raise ConfigError(f"{path}: first line must be the '# nx=... ny=...' header")
    meta = dict(HEADER_RE.findall(first))
    missing = {"nx", "ny", "Lx", "Ly", "t", "topology"} - meta.keys()
    if missing:
        raise ConfigError(f"{path}: header lacks {', '.join(sorted(missing))}")
    grid = GridSpec(
        nx=int(meta["nx"]), ny=int(meta["ny"]),
        Lx=float(meta["Lx"]), Ly=float(meta["Ly"]),
        topology=meta["topology"],
        x0=float(meta.get("x0", 0.0)), y0=float(meta.get("y0", 0.0)),
    )
    values = np.loadtxt(path, comments="#", ndmin=2)
    if values.shape != grid.shape:
        raise ConfigError(f"{path}: expected {grid.ny} rows of {grid.nx} values, found {values.shape}")
    return Field2D(grid=grid, values=values), float(meta["t"])


def load_config(path=None, environ=None) -> dict:
    """
    Merge ``key = value`` pairs from a config file with ``TWOLAYER_*`` environment overrides.
    Unknown keys in the file are rejected with their line number.
    """
    values = {}
    if path is not None:
        if not os.path.exists(path):
            raise ConfigError(f"config file {path} does not exist")
        check_config_keys(path)
        values.update({k: v for k, v in dotenv_values(path).items() if v is not None})
        logger.debug(f"Loaded {len(values)} config keys from {path}")
    environ = os.environ if environ is None else environ
    for key, value in environ.items():
        if key.startswith(ENV_PREFIX):
            values[key[len(ENV_PREFIX):].lower()] = value
    return values
