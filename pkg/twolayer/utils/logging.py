# twolayer/utils/logging.py

import json
import logging
import os
import sys
import time
from logging.handlers import RotatingFileHandler

UNFUN_LOGGER_NAME = "Two Layer"
FUN_MOJIS = "🌊🌀"
LOGGER_NAME = f"{UNFUN_LOGGER_NAME} {FUN_MOJIS}"

STREAM_FORMATS = {
    False: ("%(levelname)-8s %(message)s", None),
    True: ("%(asctime)s.%(msecs)03d %(levelname)-8s [%(command)s %(filename)s:%(funcName)s:%(lineno)d] %(message)s",
           "%Y-%m-%d %H:%M:%S"),
}

JSON_FIELDS = {
    "time": "%(asctime)s.%(msecs)03d",
    "level": "%(levelname)s",
    "command": "%(command)s",
    "seed": "%(seed)s",
    "where": "%(module)s.%(funcName)s:%(lineno)d",
    "message": "%(message)s",
}

logger = logging.getLogger(LOGGER_NAME)
logger.setLevel(logging.INFO)


class RunContext(logging.Filter):
    """Stamps every record with the subcommand being run and the seed of its randomized checks."""

    def __init__(self):
        super().__init__()
        self.command = "-"
        self.seed = "-"

    def filter(self, record):
        record.command = self.command
        record.seed = self.seed
        return True


run_context = RunContext()


def bind_run(command=None, seed=None):
    """Tag subsequent log records with the running subcommand and seed."""
    run_context.command = command or "-"
    run_context.seed = "-" if seed is None else str(seed)


def _flag(name) -> bool:
    return os.environ.get(name, "False").lower() == "true"


def configure_logger():
    level = os.environ.get("LOG_LEVEL", "INFO").upper()
    fmt_stream, datefmt = STREAM_FORMATS[_flag("LOG_VERBOSE")]

    logger.setLevel(level)
    logger.handlers = []
    logger.filters = [run_context]

    # stdout carries records, so logs go to stderr
    shell_handler = logging.StreamHandler(sys.stderr)
    shell_handler.setLevel(level)
    shell_handler.setFormatter(logging.Formatter(fmt_stream, datefmt=datefmt))
    logger.addHandler(shell_handler)

    if _flag("LOG_FILES"):
        directory = os.environ.get("LOG_DIR", "logs")
        os.makedirs(directory, exist_ok=True)
        filename = os.path.join(directory, f"twolayer-{time.strftime('%Y-%m-%d')}.jsonl")
        # one JSON object per line; 5MB per file
        file_handler = RotatingFileHandler(filename=filename, maxBytes=5 * 1024 * 1024, backupCount=3,
                                           encoding="utf-8")
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter(json.dumps(JSON_FIELDS), datefmt="%Y-%m-%dT%H:%M:%S"))
        logger.addHandler(file_handler)

    return logger


def log_exception(exc_type, exc_value, exc_traceback):
    """
    Logs an uncaught exception with its traceback.
    """
    logger.error(
        "Uncaught exception",
        exc_info=(exc_type, exc_value, exc_traceback)
    )
