from fastapi import APIRouter, Query
from typing import List

from app import schemas, services

router = APIRouter(prefix="/orbits", tags=["orbits"])


@router.post("/classify", response_model=schemas.ClassificationOut)
def classify_vector(vector: schemas.VectorIn):
    """Wall orbit of a primitive T-vector (basis e) or of a y-vector (basis y)"""
    return services.classify(vector.coords, vector.basis)


@router.get("/table", response_model=List[schemas.OrbitRow])
def orbit_table(delta_max: int = Query(default=16, ge=1, le=1000)):
    return services.orbit_rows(delta_max)
