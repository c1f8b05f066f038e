"""
Logging setup.

Modules log through ``logging.getLogger(__name__)`` and pass structured context
with ``extra={...}``; the JSON formatter turns those into fields.
"""

import logging
import sys
from typing import Optional

from pythonjsonlogger import jsonlogger

from config.settings import LogFormat, LoggingSettings

TEXT_FORMAT = "%(asctime)s %(levelname)-8s %(name)s: %(message)s"
JSON_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"


def _formatter(fmt: LogFormat) -> logging.Formatter:
    if fmt == LogFormat.JSON:
        return jsonlogger.JsonFormatter(
            JSON_FORMAT,
            rename_fields = {"levelname": "level", "name": "logger"},
        )
    return logging.Formatter(TEXT_FORMAT)


def configure_logging(cfg: LoggingSettings, level: Optional[str] = None) -> None:
    """
    Install handlers on the root logger. Safe to call more than once.

    Args:
        cfg: logging section of the settings
        level: override of cfg.level (the CLI's --log-level)
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_solver_forge", False):
            root.removeHandler(handler)

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if cfg.log_file:
        handlers.append(logging.FileHandler(cfg.log_file, encoding = "utf-8"))

    formatter = _formatter(cfg.format)
    for handler in handlers:
        handler.setFormatter(formatter)
        handler._solver_forge = True
        root.addHandler(handler)

    root.setLevel((level or cfg.level).upper())

    # Quiet the HTTP stacks unless debugging.
    for noisy in ("httpx", "httpcore", "anthropic", "openai"):
        logging.getLogger(noisy).setLevel(logging.WARNING)
