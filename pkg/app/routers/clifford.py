from fastapi import APIRouter, Depends

from app import schemas, services
from app.dependencies import delta_param

router = APIRouter(prefix="/clifford", tags=["clifford"])


@router.get("/ks", response_model=schemas.KSReportOut)
def kuga_satake(delta: int = Depends(delta_param)):
    """Even Clifford algebra and Kuga-Satake decomposition for T_delta"""
    return services.ks_out(delta)


@router.get("/quat", response_model=schemas.QuatOut)
def quaternion(a: str, b: str):
    return services.quat_out(services.parse_rational(a), services.parse_rational(b))
