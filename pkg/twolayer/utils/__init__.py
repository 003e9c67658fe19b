# twolayer/utils/__init__.py
from .logging import logger, configure_logger, log_exception, bind_run
from .loader import load_config, read_field, write_field
from .records import emit_record, parse_record
