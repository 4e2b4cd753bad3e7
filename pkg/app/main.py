from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from .core.config import settings
from .core.events import configure_logging
from .api.v1.api import api_router
from .middleware import performance_monitoring_middleware

configure_logging()

app = FastAPI(
    title=settings.app_name,
    version=settings.app_version,
    description="Period Degree Calculator API"
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Add performance monitoring middleware
app.middleware("http")(performance_monitoring_middleware)


@app.get("/")
def root():
    """Health check endpoint."""
    return {"message": "API is running", "version": settings.app_version}


@app.get("/api/v1/periods/health")
def health():
    return {"status": "healthy", "version": settings.app_version}


# Include API routes
app.include_router(api_router, prefix="/api/v1")
