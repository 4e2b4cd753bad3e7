from typing import List

from fastapi import APIRouter, Depends

from ...api.deps import get_period_service, http_error
from ...core.exceptions import PeriodError
from ...schemas import (
    ClosedFormSchema,
    ComplexEstimate,
    DegreeBoundResponse,
    EvalRequest,
    ExprRequest,
    GalleryEntry,
    RatintRequest,
    ReportRequest,
    TranscendenceReport,
    WitnessSchema,
    ZetaEvaluation,
    ZetaRequest,
)
from ...services.period_service import PeriodService

router = APIRouter()


@router.post("/eval", response_model=ComplexEstimate)
def evaluate(request: EvalRequest, service: PeriodService = Depends(get_period_service)):
    """Monte Carlo value of an expression."""
    try:
        return service.evaluate(request.expr, request.samples, request.seed)
    except PeriodError as exc:
        raise http_error(exc)


@router.post("/bound", response_model=DegreeBoundResponse)
def bound(request: ExprRequest, service: PeriodService = Depends(get_period_service)):
    try:
        return service.bound(request.expr)
    except PeriodError as exc:
        raise http_error(exc)


@router.post("/witness", response_model=WitnessSchema)
def witness(request: ExprRequest, service: PeriodService = Depends(get_period_service)):
    """Cells of all four buckets, exact coefficients as strings."""
    try:
        return service.witness(request.expr)
    except PeriodError as exc:
        raise http_error(exc)


@router.post("/zeta", response_model=ZetaEvaluation)
def zeta(request: ZetaRequest, service: PeriodService = Depends(get_period_service)):
    try:
        return service.zeta(request.expr, request.t, request.terms)
    except PeriodError as exc:
        raise http_error(exc)


@router.post("/ratint", response_model=ClosedFormSchema)
def ratint(request: RatintRequest, service: PeriodService = Depends(get_period_service)):
    """Closed form of a definite rational integral."""
    try:
        return service.ratint(request.num, request.lo, request.hi,
                              den=request.den, factored=request.factored)
    except PeriodError as exc:
        raise http_error(exc)


@router.post("/report", response_model=TranscendenceReport)
def report(request: ReportRequest, service: PeriodService = Depends(get_period_service)):
    try:
        return service.report(request.expr1, request.expr2, request.assert_degrees)
    except PeriodError as exc:
        raise http_error(exc)


@router.get("/gallery", response_model=List[GalleryEntry])
def gallery(service: PeriodService = Depends(get_period_service)):
    return service.gallery()
