from fastapi import APIRouter

from .periods import router as periods_router

api_router = APIRouter()

api_router.include_router(periods_router, prefix="/periods", tags=["periods"])
