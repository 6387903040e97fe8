from fastapi import APIRouter

from app import schemas, services
from app.core.lattice import direct_sum, make_standard, rescale

router = APIRouter(prefix="/lattices", tags=["lattices"])


@router.post("/info", response_model=schemas.LatticeOut)
def lattice_info(lattice: schemas.LatticeIn):
    """Rank, signature, determinant, parity and discriminant group of a Gram matrix"""
    return services.lattice_out(services.load_lattice(lattice))


@router.get("/standard/{name}", response_model=schemas.LatticeOut)
def standard_lattice(name: str):
    """Standard lattice by name, e.g. U+D6^2+A1^2"""
    return services.lattice_out(make_standard(name))


@router.post("/sum", response_model=schemas.LatticeOut)
def lattice_sum(data: schemas.SumIn):
    lattices = [services.load_lattice(L) for L in data.lattices]
    return services.lattice_out(direct_sum(*lattices, label="+".join(L.label for L in lattices if L.label)))


@router.post("/scale", response_model=schemas.LatticeOut)
def lattice_scale(data: schemas.ScaleIn):
    return services.lattice_out(rescale(services.load_lattice(data.lattice), data.factor))
