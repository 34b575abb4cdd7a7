"""Structured logging for the barc tools.

Logs go to stderr so that stdout carries only data (barcodes, distances,
reports). With ``json_format`` every record is a single JSON object; check-suite
events add ``event_type``, ``suite``, ``instance`` and ``data`` keys.
"""

import json
import logging
import sys
from collections.abc import Mapping
from datetime import datetime
from pathlib import Path
from typing import Any, Optional, TextIO

TEXT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
TEXT_DATEFMT = "%Y-%m-%d %H:%M:%S"

# Record attributes copied into JSON output when set.
STRUCTURED_FIELDS = ("event_type", "suite", "instance")


class JSONFormatter(logging.Formatter):
    """One JSON object per record, with optional run-wide context fields."""

    def __init__(self, context: Optional[Mapping[str, Any]] = None) -> None:
        super().__init__()
        self.context = dict(context or {})

    def format(self, record: logging.LogRecord) -> str:
        payload: dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            **self.context,
        }
        for key in STRUCTURED_FIELDS:
            value = getattr(record, key, None)
            if value is not None:
                payload[key] = value
        data = getattr(record, "extra_data", None)
        if data is not None:
            payload["data"] = data
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        # Fractions and numpy scalars fall back to str.
        return json.dumps(payload, default=str)


def _formatter(json_format: bool, context: Optional[Mapping[str, Any]]) -> logging.Formatter:
    if json_format:
        return JSONFormatter(context)
    return logging.Formatter(TEXT_FORMAT, datefmt=TEXT_DATEFMT)


def setup_logger(
    name: str = "barc",
    level: str = "INFO",
    log_file: Optional[str] = None,
    json_format: bool = False,
    stream: Optional[TextIO] = None,
    context: Optional[Mapping[str, Any]] = None,
) -> logging.Logger:
    """Configure a logger with a console handler and an optional log file.

    Calling it again for the same name replaces the handlers.

    Args:
        name: Logger name ("" configures the root logger)
        level: Logging level name, case-insensitive
        log_file: Optional log file path; parent directories are created
        json_format: Emit JSON-structured records
        stream: Console stream, stderr by default
        context: Fields added to every JSON record (e.g. the run's seed)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(level.upper())
    logger.handlers.clear()

    formatter = _formatter(json_format, context)
    handlers: list[logging.Handler] = [logging.StreamHandler(stream or sys.stderr)]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))
    for handler in handlers:
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    logger.propagate = False
    return logger


def log_check_event(
    logger: logging.Logger,
    event_type: str,
    suite: str,
    message: str,
    instance: Optional[int] = None,
    extra_data: Optional[dict[str, Any]] = None,
) -> None:
    """Log a check-suite event; counterexamples are logged at WARNING.

    Args:
        logger: Logger instance
        event_type: "suite_started", "counterexample" or "suite_finished"
        suite: Check suite name
        message: Human-readable message
        instance: Instance index within the suite, if the event has one
        extra_data: Witness or summary data
    """
    level = logging.WARNING if event_type == "counterexample" else logging.INFO
    logger.log(
        level,
        message,
        extra={
            "event_type": event_type,
            "suite": suite,
            "instance": instance,
            "extra_data": extra_data or {},
        },
    )
