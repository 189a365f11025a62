"""Logging bootstrap shared by the command-line tools."""

import logging
import sys
from typing import Optional

from pythonjsonlogger import jsonlogger

from config.config import settings

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(level: Optional[str] = None, json_format: Optional[bool] = None) -> None:
    """
    Install a single stderr handler on the root logger.

    Args:
        level: Log level name (optional, uses config if not provided)
        json_format: Emit JSON log records instead of plain lines
    """
    level = (level or settings.LOG_LEVEL).upper()
    if json_format is None:
        json_format = settings.LOG_JSON

    handler = logging.StreamHandler(sys.stderr)
    if json_format:
        handler.setFormatter(jsonlogger.JsonFormatter(LOG_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(LOG_FORMAT))

    handler._residua = True

    root = logging.getLogger()
    root.handlers[:] = [h for h in root.handlers if not getattr(h, "_residua", False)] + [handler]
    root.setLevel(level)
