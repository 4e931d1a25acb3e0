"""Colored loguru logging for sampler services and the CLI."""

from __future__ import annotations

import os
import sys
from typing import Any, TextIO

from loguru import logger

LOG_LEVEL_ENV_VAR = "BPSKIT_LOG"
DEFAULT_LOG_LEVEL = "INFO"

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - "
    "<level>{message}</level> <dim>{extra}</dim>"
)


def resolve_log_level(level: str | None = None) -> str:
    """Pick the log level from the argument, then BPSKIT_LOG, then INFO."""
    chosen = level or os.environ.get(LOG_LEVEL_ENV_VAR) or DEFAULT_LOG_LEVEL
    return chosen.upper()


class LoggingService:
    """Service for colored logging using loguru.

    Records go to stderr so machine-readable output on stdout stays clean.
    Uses depth=1 to ensure caller's context is logged, not this service's context.
    """

    def __init__(self, level: str | None = None, sink: TextIO | None = None) -> None:
        """Initialize the logging service.

        Args:
            level: Minimum level; defaults to $BPSKIT_LOG or INFO
            sink: Stream receiving records; defaults to stderr
        """
        self.level = resolve_log_level(level)
        self._sink = sink if sink is not None else sys.stderr
        self._configure_logger()

    def _configure_logger(self) -> None:
        logger.remove()
        logger.add(sink=self._sink, format=LOG_FORMAT, colorize=True, level=self.level)

    def trace(self, message: str, **kwargs: Any) -> None:
        """Log a trace message with structured context."""
        logger.opt(depth=1).bind(**kwargs).trace(message)

    def debug(self, message: str, **kwargs: Any) -> None:
        """Log a debug message with structured context."""
        logger.opt(depth=1).bind(**kwargs).debug(message)

    def info(self, message: str, **kwargs: Any) -> None:
        """Log an info message with structured context."""
        logger.opt(depth=1).bind(**kwargs).info(message)

    def success(self, message: str, **kwargs: Any) -> None:
        """Log a success message with structured context."""
        logger.opt(depth=1).bind(**kwargs).success(message)

    def warning(self, message: str, **kwargs: Any) -> None:
        """Log a warning message with structured context."""
        logger.opt(depth=1).bind(**kwargs).warning(message)

    def error(self, message: str, **kwargs: Any) -> None:
        """Log an error message with structured context."""
        logger.opt(depth=1).bind(**kwargs).error(message)

    def critical(self, message: str, **kwargs: Any) -> None:
        """Log a critical message with structured context."""
        logger.opt(depth=1).bind(**kwargs).critical(message)

    def exception(self, message: str, **kwargs: Any) -> None:
        """Log an error with the active exception's traceback.

        Should be called from within an exception handler.

        Args:
            message: Log message
            **kwargs: Additional context fields
        """
        logger.opt(depth=1, exception=True).bind(**kwargs).error(message)
