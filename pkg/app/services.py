from fractions import Fraction
from typing import List, Optional, Sequence

from sympy import Matrix

from app import schemas
from app.core import clifford, orbits, unitary
from app.core.discriminant import FiniteQuadraticForm, isometry_orbits
from app.core.exceptions import InputError
from app.core.fibration import FibrationConfig
from app.core.lattice import IntLattice, determinant, from_gram, invariant_factors, is_even, signature

# ============= LATTICES =============


def load_lattice(data: schemas.LatticeIn) -> IntLattice:
    return from_gram(data.gram, data.label)


def lattice_out(L: IntLattice) -> schemas.LatticeOut:
    sig = signature(L)
    return schemas.LatticeOut(
        label=L.label,
        rank=L.rank,
        signature=[sig.pos, sig.neg],
        determinant=determinant(L),
        even=is_even(L),
        invariant_factors=invariant_factors(L),
        gram=[list(row) for row in L.gram],
    )


def form_out(F: FiniteQuadraticForm) -> schemas.FiniteFormOut:
    return schemas.FiniteFormOut(
        label=F.label,
        orders=list(F.orders),
        q=[str(x) for x in F.q],
        b=[[str(x) for x in row] for row in F.b],
    )


def orbits_out(F: FiniteQuadraticForm) -> List[schemas.OrbitOut]:
    return [schemas.OrbitOut(representative=list(orbit[0]), size=len(orbit), q=str(F.quad(orbit[0]))) for orbit in isometry_orbits(F)]


# ============= ORBITS =============


def parse_coords(text: str) -> list[int]:
    """comma separated integers, e.g. "1,-1,0,0,0,0" """
    try:
        coords = [int(c) for c in text.split(",")]
    except ValueError:
        raise InputError(f"Coordinates {text!r} are not comma separated integers")
    if len(coords) != 6:
        raise InputError(f"Expected 6 coordinates, got {len(coords)}")
    return coords


def _n_delta_or_none(delta) -> Optional[int]:
    """orbit count, or None where it is not defined (Delta <= 0 or 3 mod 4)"""
    delta = Fraction(delta)
    if delta.denominator == 1 and delta > 0 and delta.numerator % 4 != 3:
        return orbits.n_delta(int(delta))
    return None


def classify(coords: Sequence[int], basis: schemas.Basis) -> schemas.ClassificationOut:
    if basis == schemas.Basis.Y:
        info = orbits.classify_y(coords)
        return schemas.ClassificationOut(
            basis=basis,
            coords=list(coords),
            primitive=list(info.primitive),
            case=info.case.value,
            norm=orbits.t_norm(info.primitive),
            delta=str(info.delta),
            representative=list(info.representative),
            n_delta=_n_delta_or_none(info.delta),
            f2_class=list(orbits.f2_image(coords)),
        )

    kind = orbits.vector_type(coords)
    norm = orbits.t_norm(coords)
    delta = orbits.delta_of_t(coords)
    return schemas.ClassificationOut(
        basis=basis,
        coords=list(coords),
        primitive=list(coords),
        case=kind.value,
        norm=norm,
        delta=str(schemas.exact(delta)),
        representative=list(orbits.canonical_rep(norm, kind)),
        n_delta=_n_delta_or_none(delta),
    )


def orbit_rows(delta_max: int) -> List[schemas.OrbitRow]:
    if delta_max < 1:
        raise InputError("delta-max must be positive")
    return [
        schemas.OrbitRow(
            delta=row.delta,
            case=row.case.value,
            representative=list(row.representative),
            f2_class=list(row.f2_class),
            orbit_size=row.orbit_size,
            n_delta=row.n_delta,
        )
        for row in orbits.orbit_table(delta_max)
    ]


# ============= SCENARIOS =============


def scenario_summary(c: FibrationConfig) -> schemas.ScenarioSummary:
    return schemas.ScenarioSummary(
        name=c.name,
        description=c.description,
        fibers=[str(f) for f in c.fibers],
        torsion_order=c.torsion_order,
        mw_rank=c.mw_rank,
        expected_ns=c.expected_ns,
        expected_t=c.expected_t,
    )


# ============= UNITARY =============


def gaussian_matrix(data: schemas.GaussianMatrixIn) -> Matrix:
    return unitary.from_entries(data.entries)


def phi_out(A: Matrix) -> schemas.PhiOut:
    g = unitary.phi(A)
    return schemas.PhiOut(
        matrix=[[int(g[i, j]) for j in range(6)] for i in range(6)],
        congruence=unitary.congruent_mod_2(g),
        so_plus=unitary.in_so_plus(g),
    )


def pfaffian_out(y: Sequence[int]) -> schemas.PfaffianOut:
    M = unitary.m_of_y(y)
    return schemas.PfaffianOut(
        y=list(y),
        matrix=[[str(M[i, j]) for j in range(4)] for i in range(4)],
        pfaffian=str(unitary.pfaffian(M)),
        delta=orbits.delta_of_y(y),
    )


# ============= CLIFFORD =============


def _place(p) -> str:
    return str(p)


def ks_out(delta: int) -> schemas.KSReportOut:
    r = clifford.kuga_satake_report(delta)
    return schemas.KSReportOut(
        delta=r.delta,
        clifford_even=r.clifford_even,
        is_split=r.is_split,
        ks_dimension=r.ks_dimension,
        decomposition=r.decomposition,
        ramification=[_place(p) for p in r.ramification],
    )


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{text!r} is not a rational number")


def quat_out(a: Fraction, b: Fraction) -> schemas.QuatOut:
    Q = clifford.QuaternionAlgebra(Fraction(a), Fraction(b))
    places = clifford.ramification(Q)
    return schemas.QuatOut(
        a=str(Q.a),
        b=str(Q.b),
        ramification=[_place(p) for p in sorted(places, key=lambda p: (p != clifford.INFINITY, 0 if p == clifford.INFINITY else p))],
        split=not places,
    )
