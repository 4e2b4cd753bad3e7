"""
Request timing middleware: one computation event per HTTP request plus an
X-Response-Time header.
"""
import time

from fastapi import Request

from ..core.events import ComputationEvent, send_event

SLOW_REQUEST_MS = 1000


async def performance_monitoring_middleware(request: Request, call_next):
    request_start_time = time.perf_counter()
    response = await call_next(request)
    request_duration = (time.perf_counter() - request_start_time) * 1000

    response.headers["X-Response-Time"] = f"{request_duration:.2f}ms"
    send_event(ComputationEvent(
        log_type="performance",
        operation=f"{request.method} {request.url.path}",
        status="success" if response.status_code < 400 else "error",
        processing_time_ms=round(request_duration, 2),
        detail={
            "response_status_code": response.status_code,
            "is_slow_request": request_duration > SLOW_REQUEST_MS,
        },
    ))
    return response
