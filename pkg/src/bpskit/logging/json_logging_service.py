"""JSON logging for batch runs whose logs are collected by other tools."""

from __future__ import annotations

import json
from typing import Any

from loguru import logger
from rich.console import Console

from .logging_service import LoggingService


class JsonLoggingService(LoggingService):
    """LoggingService variant that renders each record as highlighted JSON.

    Structured keyword context lands under "extra", caller location under "context".
    """

    def __init__(self, console: Console | None = None, level: str | None = None) -> None:
        """Initialize the JSON logging service.

        Args:
            console: Rich Console for output; defaults to one writing to stderr
            level: Minimum level; defaults to $BPSKIT_LOG or INFO
        """
        self._console = console if console is not None else Console(stderr=True)
        super().__init__(level=level)

    def _configure_logger(self) -> None:
        logger.remove()
        logger.add(self._rich_json_sink, format="{message}", level=self.level)

    def _rich_json_sink(self, message: Any) -> None:
        record = message.record
        payload: dict[str, Any] = {
            "time": record["time"].isoformat(),
            "level": record["level"].name,
            "message": record["message"],
        }
        if record["extra"]:
            payload["extra"] = record["extra"]
        payload["context"] = {
            "module": record["module"],
            "function": record["function"],
            "line": record["line"],
        }
        if record["exception"] is not None:
            payload["exception"] = repr(record["exception"].value)
        self._console.print_json(json.dumps(payload, default=str))
