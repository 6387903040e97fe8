from fastapi import APIRouter

from app import schemas, services

router = APIRouter(prefix="/unitary", tags=["unitary"])


@router.post("/phi", response_model=schemas.PhiOut)
def phi(matrix: schemas.GaussianMatrixIn):
    """Image of an SU(2,2) matrix over Z[i] in O(T)"""
    return services.phi_out(services.gaussian_matrix(matrix))


@router.post("/pfaffian", response_model=schemas.PfaffianOut)
def pfaffian(vector: schemas.VectorIn):
    return services.pfaffian_out(vector.coords)
