"""
orbits of primitive vectors in T = U + U + <-1> + <-1>

Coordinate systems:
  e-basis   x = (x1..x6) in T; the g-basis of the unitary side is the same basis
  y-coords  y = (y1..y6), embedded as (2y1, 2y2, 2y3, 2y4, y5+y6, y5-y6)
  display   coordinates of the skew matrix M(y), mapped to T by display_to_t
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Sequence

from app.core.clifford import RationalFormClass, rational_class
from app.core.discriminant import FiniteQuadraticForm, discriminant_form, element_of, isometry_orbits
from app.core.exceptions import PreconditionError
from app.core.lattice import IntLattice, diagonalize, is_primitive, lattice_invariants, make_standard, orthogonal_complement

logger = logging.getLogger(__name__)

T_LATTICE = make_standard("T")


class VectorType(str, Enum):
    CHARACTERISTIC = "characteristic"
    ORDINARY = "ordinary"


@dataclass(frozen=True)
class YClassification:
    case: VectorType
    delta: int
    primitive: tuple[int, ...]
    representative: tuple[int, ...]


@dataclass(frozen=True)
class OrbitRow:
    delta: int
    case: VectorType
    representative: tuple[int, ...]
    f2_class: tuple[int, ...]
    orbit_size: int
    n_delta: int


def _check_length(x: Sequence[int]):
    if len(x) != 6:
        raise PreconditionError(f"Expected 6 coordinates, got {len(x)}")


def _require_primitive(x: Sequence[int]):
    _check_length(x)
    if not is_primitive(x):
        raise PreconditionError(f"{tuple(x)} is not primitive")


def t_norm(x: Sequence) -> int:
    return 2 * (x[0] * x[1] + x[2] * x[3]) - x[4] ** 2 - x[5] ** 2


# ============= WALL CLASSIFICATION =============


def vector_type(x: Sequence[int]) -> VectorType:
    _require_primitive(x)
    if all(c % 2 == 0 for c in x[:4]) and x[4] % 2 and x[5] % 2:
        return VectorType.CHARACTERISTIC
    return VectorType.ORDINARY


def canonical_rep(norm: int, kind: VectorType) -> tuple[int, ...]:
    if norm >= 0:
        raise PreconditionError(f"Norm {norm} must be negative")
    if kind == VectorType.CHARACTERISTIC:
        k = -norm // 2
        if norm % 2 or k % 4 != 1:
            raise PreconditionError(f"No characteristic vector of norm {norm}")
        return (2, (1 - k) // 2, 0, 0, 1, 1)
    if norm % 2:
        k = (-norm - 1) // 2
        return (1, -k, 0, 0, 1, 0)
    return (1, norm // 2, 0, 0, 0, 0)


def orbit_equivalent(x1: Sequence[int], x2: Sequence[int]) -> bool:
    """same O(T)-orbit: equal norm and equal type"""
    return t_norm(x1) == t_norm(x2) and vector_type(x1) == vector_type(x2)


# ============= DELTA AND Y-VECTORS =============


def delta_of_t(x: Sequence[int]) -> Fraction:
    _check_length(x)
    return Fraction(-t_norm(x), 2)


def _require_y(y: Sequence[int]):
    _check_length(y)
    if reduce(gcd, (abs(c) for c in y), 0) != 1:
        raise PreconditionError(f"y = {tuple(y)} must have gcd 1")


def delta_of_y(y: Sequence[int]) -> int:
    _require_y(y)
    return y[4] ** 2 + y[5] ** 2 - 4 * (y[0] * y[1] + y[2] * y[3])


def embed_y(y: Sequence[int]) -> tuple[int, ...]:
    _check_length(y)
    return (2 * y[0], 2 * y[1], 2 * y[2], 2 * y[3], y[4] + y[5], y[4] - y[5])


def t_to_y(x: Sequence[int]) -> tuple[int, ...]:
    _check_length(x)
    if any(c % 2 for c in x[:4]) or (x[4] + x[5]) % 2:
        raise PreconditionError(f"{tuple(x)} is not an embedded y-vector")
    return (x[0] // 2, x[1] // 2, x[2] // 2, x[3] // 2, (x[4] + x[5]) // 2, (x[4] - x[5]) // 2)


def display_to_t(y: Sequence[int]) -> tuple[Fraction, ...]:
    """T-coordinates (in T tensor Q) of the vector behind M(y)"""
    _check_length(y)
    return (Fraction(-y[0]), Fraction(y[1]), Fraction(-y[2]), Fraction(y[3]), Fraction(y[5] - y[4], 2), Fraction(y[4] + y[5], 2))


def primitive_y(y: Sequence[int]) -> tuple[int, ...]:
    """the primitive T-vector on the ray of the embedded y"""
    _require_y(y)
    x = embed_y(y)
    if (y[4] - y[5]) % 2:
        return x
    return tuple(c // 2 for c in x)


def classify_y(y: Sequence[int]) -> YClassification:
    delta = delta_of_y(y)
    x = primitive_y(y)
    if (y[4] - y[5]) % 2:
        return YClassification(VectorType.CHARACTERISTIC, delta, x, (2, (1 - delta) // 2, 0, 0, 1, 1))
    if delta % 4 == 0:
        return YClassification(VectorType.ORDINARY, delta, x, (1, -delta // 4, 0, 0, 0, 0))
    return YClassification(VectorType.ORDINARY, delta, x, (1, (2 - delta) // 4, 0, 0, 1, 0))


def n_delta(delta: int) -> int:
    if delta < 1:
        raise PreconditionError(f"Delta = {delta} must be positive")
    if delta % 4 == 3:
        raise PreconditionError(f"Delta = {delta} = 3 mod 4 is not represented")
    if delta % 4 == 0:
        return 15
    if delta % 4 == 1:
        return 1
    return 10 if delta % 8 == 2 else 6


# ============= THE DISCRIMINANT FORM OF T(2) =============


def q_t2(a: Sequence[int]) -> Fraction:
    """q of the class a/2 in T(2)*/T(2), a in F_2^6"""
    value = Fraction(a[0] * a[1] + a[2] * a[3]) - Fraction(a[4] ** 2 + a[5] ** 2, 2)
    return value % 2


KAPPA = (0, 0, 0, 0, 1, 1)


@lru_cache(maxsize=1)
def t2_form() -> FiniteQuadraticForm:
    return discriminant_form(make_standard("T(2)"))


def f2_element(a: Sequence[int]) -> tuple[int, ...]:
    """element of the finite form for the class a/2"""
    return element_of(t2_form(), [Fraction(c % 2, 2) for c in a])


@lru_cache(maxsize=1)
def t2_orbits() -> tuple[frozenset, ...]:
    """orbits of O(q_T(2)) in F_2^6 coordinates"""
    F = t2_form()
    natural = {}
    for a in range(64):
        bits = tuple((a >> (5 - i)) & 1 for i in range(6))
        natural[f2_element(bits)] = bits
    return tuple(frozenset(natural[x] for x in orbit) for orbit in isometry_orbits(F))


def t2_orbit_of(a: Sequence[int]) -> frozenset:
    a = tuple(c % 2 for c in a)
    return next(orbit for orbit in t2_orbits() if a in orbit)


def t2_fixed_points() -> list[tuple[int, ...]]:
    return sorted(next(iter(orbit)) for orbit in t2_orbits() if len(orbit) == 1)


def f2_image(y: Sequence[int]) -> tuple[int, ...]:
    return tuple(c % 2 for c in primitive_y(y))


def orbit_table(delta_max: int) -> list[OrbitRow]:
    rows = []
    for delta in range(1, delta_max + 1):
        if delta % 4 == 3:
            continue
        y = _y_with_delta(delta)
        info = classify_y(y)
        image = f2_image(y)
        rows.append(OrbitRow(delta, info.case, info.representative, image, len(t2_orbit_of(image)), n_delta(delta)))
    return rows


def _y_with_delta(delta: int) -> tuple[int, ...]:
    """a y-vector realising delta"""
    if delta % 4 == 0:
        return (1, -delta // 4, 0, 0, 0, 0)
    if delta % 4 == 1:
        return (1, (1 - delta) // 4, 0, 0, 1, 0)
    return (1, (2 - delta) // 4, 0, 0, 1, 1)


def orbit_size_rule(delta: int, orbit_size: int) -> int:
    """
    n(delta) from the orbit size: halved by the extra involution when
    delta = 2 mod 4. Characteristic classes (delta = 1 mod 4) sit on a fixed
    point, so their orbit must have size 1.
    """
    if delta % 4 == 2:
        return orbit_size // 2
    return orbit_size


def example_warning_pair() -> dict:
    """the two norm -4 vectors of T(2) with different Delta"""
    result = {}
    for y in ((1, -1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0)):
        image = f2_image(y)
        result[y] = {"delta": delta_of_y(y), "norm_in_T2": 2 * t_norm(primitive_y(y)), "f2": image, "orbit_size": len(t2_orbit_of(image))}
    return result


# ============= COMPLEMENTS =============


def complement_in_T(x: Sequence[int]) -> IntLattice:
    _require_primitive(x)
    if t_norm(x) >= 0:
        raise PreconditionError(f"<x,x> = {t_norm(x)} must be negative")
    return orthogonal_complement(T_LATTICE, list(x), label=f"{tuple(x)}^perp")


def complement_matches(x: Sequence[int], model: str) -> bool:
    """genus-level comparison of x^perp with a named lattice"""
    return lattice_invariants(complement_in_T(x)) == lattice_invariants(make_standard(model))


def other_group_complement(u: int, v: int) -> tuple[IntLattice, IntLattice]:
    """x = (0,0,0,0,u+v,u-v) and the model U + U + <-d>, d = 2(u^2 + v^2)"""
    x = (0, 0, 0, 0, u + v, u - v)
    d = 2 * (u * u + v * v)
    return complement_in_T(x), make_standard(f"U^2+<{-d}>")


def rational_class_of_complement(x: Sequence[int]) -> RationalFormClass:
    delta = delta_of_t(x)
    if delta <= 0:
        raise PreconditionError(f"Delta = {delta} must be positive")
    return rational_class(diagonalize(complement_in_T(x)))


def rational_model(delta: int) -> RationalFormClass:
    """U + <-2> + <-2> + <2 delta> over Q"""
    return rational_class(diagonalize(make_standard(f"U+<-2>^2+<{2 * delta}>")))
