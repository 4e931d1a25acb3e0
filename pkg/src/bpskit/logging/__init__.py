"""Logging services providing structured loguru output."""

from .json_logging_service import JsonLoggingService
from .logging_service import LOG_LEVEL_ENV_VAR, LoggingService, resolve_log_level

__all__ = ["LOG_LEVEL_ENV_VAR", "JsonLoggingService", "LoggingService", "resolve_log_level"]
