"""
Log configuration for the command-line surface.

Library modules only call logging.getLogger(__name__); the CLI calls
configure_logging once. Text output goes through rich on stderr so that
stdout stays reserved for command results.
"""
import json
import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from rbig_kit.sdk.exceptions import ConfigurationError

LOG_FORMATS = ("text", "json")


class JsonFormatter(logging.Formatter):
    """One JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        entry = {
            "time": self.formatTime(record, "%Y-%m-%dT%H:%M:%S"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, ensure_ascii=False)


def configure_logging(level: str = "INFO", fmt: str = "text", console: Optional[Console] = None) -> None:
    """
    Install a single handler on the package logger.

    Raises:
        ConfigurationError: For an unknown level or format
    """
    numeric = logging.getLevelName(str(level).upper())
    if not isinstance(numeric, int):
        raise ConfigurationError(f"unknown log level {level!r}")
    if fmt not in LOG_FORMATS:
        raise ConfigurationError(f"unknown log format {fmt!r}; expected one of {', '.join(LOG_FORMATS)}")

    if fmt == "json":
        handler: logging.Handler = logging.StreamHandler()
        handler.setFormatter(JsonFormatter())
    else:
        handler = RichHandler(
            console=console or Console(stderr=True),
            show_path=False,
            rich_tracebacks=False,
        )
        handler.setFormatter(logging.Formatter("%(message)s"))

    logger = logging.getLogger("rbig_kit")
    for existing in list(logger.handlers):
        logger.removeHandler(existing)
    logger.addHandler(handler)
    logger.setLevel(numeric)
    logger.propagate = False
