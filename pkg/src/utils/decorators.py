from __future__ import annotations

import functools
import time
from typing import Any, Callable

import structlog

logger = structlog.get_logger()


def log_duration(event: str) -> Callable:
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                logger.debug(
                    event,
                    func=func.__name__,
                    elapsed_ms=round((time.perf_counter() - start) * 1000, 2),
                )

        return wrapper

    return decorator
