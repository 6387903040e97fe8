from fastapi import APIRouter
from typing import List

from app import schemas
from app.tasks.acceptance import run_all_acceptance_checks

router = APIRouter(prefix="/selftest", tags=["selftest"])


@router.get("/", response_model=List[schemas.Report])
def selftest():
    """Every acceptance suite; slow"""
    return run_all_acceptance_checks()
