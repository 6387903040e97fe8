from fastapi import APIRouter

from app import schemas
from app.core.symbolic import verify_d1

router = APIRouter(prefix="/symbolic", tags=["symbolic"])


@router.get("/verify-d1", response_model=schemas.Report)
def verify_delta1_family():
    """Polynomial identities of the delta 1 family"""
    return verify_d1()
