from fastapi import HTTPException

from ..core.exceptions import PeriodError
from ..services.period_service import PeriodService


def get_period_service() -> PeriodService:
    """Period service dependency."""
    return PeriodService()


def http_error(exc: PeriodError) -> HTTPException:
    """Map a library error onto an HTTPException carrying its payload."""
    return HTTPException(status_code=exc.status_code, detail=exc.to_payload())
