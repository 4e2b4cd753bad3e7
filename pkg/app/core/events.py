"""
Structured computation events.

Each event is a pydantic model dumped as one JSON line on the ``periods.events``
logger, so a log shipper can index it the same way transaction events are.
"""
import logging
import sys
import time
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import Any, Dict, Iterator, Optional

from pydantic import BaseModel, Field

from .config import settings
from .exceptions import jsonable

logger = logging.getLogger("periods.events")


class ComputationEvent(BaseModel):
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    log_type: str = "computation"
    operation: str
    status: str = "success"
    processing_time_ms: Optional[float] = None
    detail: Dict[str, Any] = Field(default_factory=dict)


def configure_logging(level: Optional[str] = None) -> None:
    """Attach a stderr handler once; level defaults to ``settings.log_level``."""
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(handler)
        logger.propagate = False
    logger.setLevel((level or settings.log_level).upper())


def send_event(event: ComputationEvent) -> None:
    if not logger.isEnabledFor(logging.INFO):
        return
    event.detail = {k: jsonable(v) for k, v in event.detail.items()}
    logger.info(event.model_dump_json(exclude_none=True))


@contextmanager
def timed_event(operation: str, **detail: Any) -> Iterator[Dict[str, Any]]:
    """Time a block and emit one event; callers may add to the yielded detail."""
    start = time.perf_counter()
    payload: Dict[str, Any] = dict(detail)
    status = "success"
    try:
        yield payload
    except Exception as exc:
        status = "error"
        payload["error"] = str(exc)
        raise
    finally:
        send_event(ComputationEvent(operation=operation,
                                    status=status,
                                    processing_time_ms=round((time.perf_counter() - start) * 1000, 3),
                                    detail=payload))
