# twolayer/utils/validator.py
from ..errors import ConfigError
from .logging import logger

# flat key space of RunConfig; matched case-insensitively
CONFIG_KEYS = frozenset({
    # grid
    "nx", "ny", "lx", "ly", "topology", "x0", "y0", "derivatives",
    # model
    "beta", "f",
    # solver
    "dt", "steps", "scheme", "ra_filter", "dealias", "output_every",
    # boundary
    "boundary", "l", "y",
    # run
    "output_dir", "seed",
})


def check_config_keys(path, known=CONFIG_KEYS):
    """
    Scans a ``key = value`` file and raises ConfigError naming the first bad line.
    Blank lines and ``#`` comments are skipped.
    """
    with open(path, "r", encoding="utf-8", errors="replace") as infile:
        for line_num, raw in enumerate(infile, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                logger.error(f"Config line {line_num} has no '=': {line}")
                raise ConfigError(f"{path}:{line_num}: expected 'key = value', got {line!r}")
            key = line.split("=", 1)[0].strip()
            if key.startswith("export "):
                key = key[len("export "):].strip()
            if key.lower() not in known:
                logger.error(f"Unknown config key '{key}' on line {line_num}")
                raise ConfigError(f"{path}:{line_num}: unknown key '{key}'")
