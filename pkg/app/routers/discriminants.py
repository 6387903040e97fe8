from fastapi import APIRouter
from typing import List

from app import schemas, services
from app.core.discriminant import discriminant_form

router = APIRouter(prefix="/discriminants", tags=["discriminants"])


@router.post("/form", response_model=schemas.FiniteFormOut)
def finite_form(lattice: schemas.LatticeIn):
    """Discriminant group orders with q and b as exact fractions"""
    return services.form_out(discriminant_form(services.load_lattice(lattice)))


@router.post("/orbits", response_model=List[schemas.OrbitOut])
def form_orbits(lattice: schemas.LatticeIn):
    """Orbits of the isometry group of the discriminant form"""
    return services.orbits_out(discriminant_form(services.load_lattice(lattice)))
