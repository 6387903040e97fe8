import logging

from fastapi import FastAPI, APIRouter, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app.core.config import settings
from app.core.exceptions import K3LatError
from .routers import lattices, discriminants, orbits, scenarios, unitary, clifford, symbolic, selftest

logging.basicConfig(level=settings.LOG_LEVEL)
logger = logging.getLogger(__name__)

app = FastAPI(title="k3lat", version=settings.VERSION)


# security headers
@app.middleware("http")
async def security_headers(request: Request, call_next):
    response = await call_next(request)
    response.headers["X-Content-Type-Options"] = "nosniff"
    response.headers["X-Frame-Options"] = "DENY"
    return response


# CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["http://localhost:3000", f"http://localhost:{settings.API_PORT}"],
    allow_methods=["GET", "POST", "OPTIONS"],
    allow_headers=["Content-Type", "Accept", "Origin"],
)

api_router = APIRouter(prefix=settings.API_V1_STR)

api_router.include_router(lattices.router)
api_router.include_router(discriminants.router)
api_router.include_router(orbits.router)
api_router.include_router(scenarios.router)
api_router.include_router(unitary.router)
api_router.include_router(clifford.router)
api_router.include_router(symbolic.router)
api_router.include_router(selftest.router)

app.include_router(api_router)


@app.get("/", include_in_schema=False)
def read_root():
    return {"message": "OK"}


@app.get("/health", tags=["health"])
def health_check():
    return {
        "status": "healthy",
        "project_name": settings.PROJECT_NAME,
        "version": settings.VERSION,
    }


@app.exception_handler(K3LatError)
async def k3lat_error_handler(request: Request, exc: K3LatError):
    if exc.status_code >= 500:
        logger.error(f"Internal check failed on {request.url.path}: {exc.detail}")
    return JSONResponse(status_code=exc.status_code, content={"detail": exc.detail})
