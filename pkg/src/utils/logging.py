from __future__ import annotations

import logging
import sys
from pathlib import Path

import structlog

# stdout carries reports; logs stay on stderr
RENDERERS = {
    "console": lambda: structlog.dev.ConsoleRenderer(colors=False),
    "json": lambda: structlog.processors.JSONRenderer(sort_keys=True),
}


def _handlers(log_file: str | None) -> list[logging.Handler]:
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(str(path), encoding="utf-8"))
    return handlers


def setup_logging(level: str = "WARNING", log_file: str | None = None, fmt: str = "console") -> None:
    log_level = logging.getLevelName(level.upper())
    if not isinstance(log_level, int):
        log_level = logging.WARNING
    logging.basicConfig(format="%(message)s", level=log_level, handlers=_handlers(log_file), force=True)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            RENDERERS.get(fmt, RENDERERS["console"])(),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(log_level),
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        # each CLI invocation reconfigures; cached loggers would keep the old level
        cache_logger_on_first_use=False,
    )
