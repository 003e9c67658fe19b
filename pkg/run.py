# run.py
import sys

from twolayer import create_cli, logger
from twolayer.utils import log_exception


def main(argv=None) -> int:
    sys.excepthook = log_exception
    cli = create_cli()

    logger.debug("🚀 twolayer is starting...")
    try:
        cli.main(args=argv, prog_name="twolayer")
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else (0 if e.code is None else 1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
