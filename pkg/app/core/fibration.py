"""
jacobian elliptic fibrations: Kodaira fibers, trivial lattice, Shioda-Tate,
heights and the Neron-Severi lattice spanned by sections

Component labels per fiber kind:
  I_n        id, c1 .. c(n-1)          (c_i is root vertex i-1)
  III, IV    id, c1 (, c2)
  I*_n       id, near, far1, far2      (near = vertex 0, far = last two vertices)
  III*       id, far                   (vertex 5 of E7)
  IV*        id, far1, far2            (vertices 0 and 4 of E6)
"""

import itertools
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from sympy import Matrix

from app.core.exceptions import InputError, K3LatError, PreconditionError
from app.core.lattice import IntLattice, determinant, direct_sum, invariant_factors, make_standard
from app.core.normalforms import rational_span_basis

logger = logging.getLogger(__name__)

IDENTITY = "id"
K3_EULER = 24


class FiberKind(str, Enum):
    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"
    I_STAR = "I*"
    II_STAR = "II*"
    III_STAR = "III*"
    IV_STAR = "IV*"


@dataclass(frozen=True)
class KodairaFiber:
    kind: FiberKind
    n: int = 0

    def __post_init__(self):
        if self.kind == FiberKind.I and self.n < 1:
            raise InputError("I_n needs n >= 1")
        if self.kind == FiberKind.I_STAR and self.n < 0:
            raise InputError("I*_n needs n >= 0")
        if self.kind not in (FiberKind.I, FiberKind.I_STAR) and self.n != 0:
            raise InputError(f"{self.kind.value} takes no parameter")

    def __str__(self) -> str:
        if self.kind == FiberKind.I:
            return f"I{self.n}"
        if self.kind == FiberKind.I_STAR:
            return f"I{self.n}*"
        return self.kind.value


_FIBER_NAME = re.compile(r"^I(\d+)(\*?)$")


def parse_fiber(name: str) -> KodairaFiber:
    """I2, I0*, III, IV* ..."""
    name = name.strip()
    m = _FIBER_NAME.match(name)
    if m:
        kind = FiberKind.I_STAR if m.group(2) else FiberKind.I
        return KodairaFiber(kind, int(m.group(1)))
    try:
        return KodairaFiber(FiberKind(name))
    except ValueError:
        raise InputError(f"Unknown fiber type {name!r}")


@dataclass(frozen=True)
class FiberData:
    root_lattice: Optional[IntLattice]
    euler: int
    component_group: tuple[int, ...]
    disc_group: tuple[int, ...]


@dataclass(frozen=True)
class SectionSpec:
    name: str
    pairing_with_zero: int
    components: tuple[str, ...]
    torsion: bool = False
    in_lattice: bool = True
    # intersection numbers P.Q with other named sections
    meets: dict = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        if self.pairing_with_zero < 0:
            raise InputError(f"Section {self.name}: P.O must be non-negative")


@dataclass(frozen=True)
class FibrationConfig:
    name: str
    fibers: tuple[KodairaFiber, ...]
    sections: tuple[SectionSpec, ...] = ()
    torsion_order: int = 1
    mw_rank: int = 0
    mwl_disc: Fraction = Fraction(1)
    chi: int = 2
    expected_ns: str = ""
    expected_t: str = ""
    # v in T(2) (basis U(2)+U(2)+A1+A1) whose enhancement gives this case
    enhancement: Optional[tuple[int, ...]] = None
    description: str = ""

    def section(self, name: str) -> SectionSpec:
        for s in self.sections:
            if s.name == name:
                return s
        raise InputError(f"No section {name!r} in {self.name}")


# ============= FIBER TABLE =============


@lru_cache(maxsize=None)
def fiber_data(f: KodairaFiber) -> FiberData:
    kind, n = f.kind, f.n
    if kind == FiberKind.I:
        root = make_standard(f"A{n - 1}") if n >= 2 else None
        euler, group = n, (n,) if n > 1 else ()
    elif kind == FiberKind.II:
        root, euler, group = None, 2, ()
    elif kind == FiberKind.III:
        root, euler, group = make_standard("A1"), 3, (2,)
    elif kind == FiberKind.IV:
        root, euler, group = make_standard("A2"), 4, (3,)
    elif kind == FiberKind.I_STAR:
        root, euler = make_standard(f"D{n + 4}"), n + 6
        group = (2, 2) if n % 2 == 0 else (4,)
    elif kind == FiberKind.II_STAR:
        root, euler, group = make_standard("E8"), 10, ()
    elif kind == FiberKind.III_STAR:
        root, euler, group = make_standard("E7"), 9, (2,)
    else:
        root, euler, group = make_standard("E6"), 8, (3,)
    disc = tuple(invariant_factors(root)) if root is not None else ()
    return FiberData(root, euler, group, disc)


def component_labels(f: KodairaFiber) -> tuple[str, ...]:
    """non-identity simple components"""
    kind = f.kind
    if kind == FiberKind.I:
        return tuple(f"c{i}" for i in range(1, f.n))
    if kind == FiberKind.III:
        return ("c1",)
    if kind == FiberKind.IV:
        return ("c1", "c2")
    if kind == FiberKind.I_STAR:
        return ("near", "far1", "far2")
    if kind == FiberKind.III_STAR:
        return ("far",)
    if kind == FiberKind.IV_STAR:
        return ("far1", "far2")
    return ()


def component_vertex(f: KodairaFiber, label: str) -> Optional[int]:
    """root vertex of a simple component; None for the identity component"""
    if label == IDENTITY:
        return None
    if label not in component_labels(f):
        raise InputError(f"Component {label!r} is not valid for {f}")
    kind = f.kind
    if kind in (FiberKind.I, FiberKind.III, FiberKind.IV):
        return int(label[1:]) - 1
    if kind == FiberKind.I_STAR:
        k = f.n + 4
        return {"near": 0, "far1": k - 2, "far2": k - 1}[label]
    if kind == FiberKind.III_STAR:
        return 5
    return {"far1": 0, "far2": 4}[label]


@lru_cache(maxsize=None)
def _inverse_root_gram(f: KodairaFiber) -> Matrix:
    root = fiber_data(f).root_lattice
    return -root.matrix().inv()


def local_contribution(f: KodairaFiber, c1: str, c2: str) -> Fraction:
    """contr(P, Q) at one fiber, read off the inverse of the root gram"""
    v1, v2 = component_vertex(f, c1), component_vertex(f, c2)
    if v1 is None or v2 is None:
        return Fraction(0)
    value = _inverse_root_gram(f)[v1, v2]
    return Fraction(int(value.p), int(value.q))


def tabulated_contribution(f: KodairaFiber, c1: str, c2: str) -> Fraction:
    """closed-form contribution table"""
    v1, v2 = component_vertex(f, c1), component_vertex(f, c2)
    if v1 is None or v2 is None:
        return Fraction(0)
    kind, n = f.kind, f.n
    if kind == FiberKind.I:
        i, j = sorted((v1 + 1, v2 + 1))
        return Fraction(i * (n - j), n)
    if kind == FiberKind.III:
        return Fraction(1, 2)
    if kind == FiberKind.IV:
        return Fraction(2, 3) if c1 == c2 else Fraction(1, 3)
    if kind == FiberKind.I_STAR:
        if c1 == "near" and c2 == "near":
            return Fraction(1)
        if "near" in (c1, c2):
            return Fraction(1, 2)
        return 1 + Fraction(n, 4) if c1 == c2 else Fraction(1, 2) + Fraction(n, 4)
    if kind == FiberKind.III_STAR:
        return Fraction(3, 2)
    return Fraction(4, 3) if c1 == c2 else Fraction(2, 3)


# ============= LATTICE DATA =============


def _check_sections(c: FibrationConfig):
    for s in c.sections:
        if len(s.components) != len(c.fibers):
            raise InputError(f"Section {s.name} lists {len(s.components)} components for {len(c.fibers)} fibers")
        for f, label in zip(c.fibers, s.components):
            component_vertex(f, label)


def euler_sum(c: FibrationConfig) -> int:
    return sum(fiber_data(f).euler for f in c.fibers)


def trivial_lattice(c: FibrationConfig) -> IntLattice:
    """U + the root lattices of the reducible fibers"""
    roots = [fiber_data(f).root_lattice for f in c.fibers]
    parts = [make_standard("U")] + [r for r in roots if r is not None]
    label = "+".join(p.label for p in parts)
    return direct_sum(*parts, label=label)


def shioda_tate(c: FibrationConfig, rho: int) -> int:
    rank = rho - trivial_lattice(c).rank
    if rank < 0:
        raise PreconditionError(f"rho = {rho} is below the rank of the trivial lattice of {c.name}")
    return rank


def height(c: FibrationConfig, P: SectionSpec) -> Fraction:
    _check_sections(c)
    correction = sum((local_contribution(f, a, a) for f, a in zip(c.fibers, P.components)), Fraction(0))
    return 2 * c.chi + 2 * P.pairing_with_zero - correction


def height_pairing(c: FibrationConfig, P: SectionSpec, Q: SectionSpec, pq: Optional[int] = None) -> Fraction:
    if P.name == Q.name:
        return height(c, P)
    _check_sections(c)
    if pq is None:
        pq = P.meets.get(Q.name, Q.meets.get(P.name))
        if pq is None:
            raise PreconditionError(f"Intersection number {P.name}.{Q.name} is not recorded")
    correction = sum((local_contribution(f, a, b) for f, a, b in zip(c.fibers, P.components, Q.components)), Fraction(0))
    return c.chi + P.pairing_with_zero + Q.pairing_with_zero - pq - correction


def ns_discriminant(c: FibrationConfig) -> Fraction:
    """discr NS = (-1)^rank / |tors|^2 * discr(trivial) * discr(MWL)"""
    sign = -1 if c.mw_rank % 2 else 1
    return Fraction(sign * determinant(trivial_lattice(c))) * c.mwl_disc / (c.torsion_order**2)


def _section_pairings(c: FibrationConfig, P: SectionSpec) -> list[int]:
    """P against e = O + F, f = F and the fiber roots"""
    row = [P.pairing_with_zero + 1, 1]
    for f, label in zip(c.fibers, P.components):
        root = fiber_data(f).root_lattice
        if root is None:
            continue
        vertex = component_vertex(f, label)
        row += [int(v == vertex) for v in range(root.rank)]
    return row


def ns_lattice(c: FibrationConfig) -> IntLattice:
    """
    the lattice spanned by the trivial lattice and the recorded sections:
    torsion sections are solved in the rational span of the trivial lattice,
    free sections are adjoined with P^2 = -2
    """
    _check_sections(c)
    trivial = trivial_lattice(c)
    n = trivial.rank
    free = [s for s in c.sections if not s.torsion and s.in_lattice]
    torsion = [s for s in c.sections if s.torsion]

    size = n + len(free)
    gram = [[0] * size for _ in range(size)]
    for i in range(n):
        gram[i][:n] = trivial.gram[i]
    for a, P in enumerate(free):
        row = _section_pairings(c, P)
        for i in range(n):
            gram[n + a][i] = gram[i][n + a] = row[i]
        for b, Q in enumerate(free):
            gram[n + a][n + b] = -2 if a == b else _recorded_meeting(P, Q)

    inverse = trivial.matrix().inv()
    solved = {}
    for t in torsion:
        coords = inverse * Matrix(_section_pairings(c, t))
        vector = [Fraction(int(x.p), int(x.q)) for x in coords] + [Fraction(0)] * len(free)
        if _pair(gram, vector, vector) != -2:
            raise K3LatError(f"Torsion section {t.name} does not have self-intersection -2")
        solved[t.name] = vector

    # recorded intersections must agree with the classes
    classes = dict(solved)
    classes.update({P.name: _unit(size, n + a) for a, P in enumerate(free)})
    for s in c.sections:
        for other, value in s.meets.items():
            if s.name in classes and other in classes:
                computed = _pair(gram, classes[s.name], classes[other])
                if computed != value:
                    raise K3LatError(f"{s.name}.{other} = {computed}, recorded {value}")

    basis = rational_span_basis([_unit(size, i) for i in range(size)] + list(solved.values()))
    rows = []
    for v in basis:
        row = []
        for w in basis:
            value = _pair(gram, v, w)
            if value.denominator != 1:
                raise K3LatError(f"NS gram of {c.name} is not integral")
            row.append(int(value))
        rows.append(tuple(row))
    result = IntLattice(tuple(rows), f"NS({c.name})")
    logger.debug(f"Built NS of {c.name}: rank {result.rank}")
    return result


def _recorded_meeting(P: SectionSpec, Q: SectionSpec) -> int:
    value = P.meets.get(Q.name, Q.meets.get(P.name))
    if value is None:
        raise PreconditionError(f"Intersection number {P.name}.{Q.name} is not recorded")
    return value


def _unit(n: int, i: int) -> list[Fraction]:
    return [Fraction(int(j == i)) for j in range(n)]


def _pair(gram: Sequence[Sequence[int]], v: Sequence[Fraction], w: Sequence[Fraction]) -> Fraction:
    return sum((v[i] * gram[i][j] * w[j] for i in range(len(v)) for j in range(len(w)) if v[i] and w[j]), Fraction(0))


def mwl_gram(c: FibrationConfig) -> list[list[Fraction]]:
    """height pairing on the free sections that span the Mordell-Weil lattice"""
    free = [s for s in c.sections if not s.torsion and s.in_lattice]
    return [[height_pairing(c, P, Q) for Q in free] for P in free]


def delta1_alternatives() -> list[tuple[str, ...]]:
    """incidences on 2 x I2*, 2 x I2 of sections with P.O = 0 and height 1"""
    fibers = (parse_fiber("I2*"), parse_fiber("I2*"), parse_fiber("I2"), parse_fiber("I2"))
    c = FibrationConfig("delta1-search", fibers)
    found = []
    choices = [(IDENTITY,) + component_labels(f) for f in fibers]
    for components in itertools.product(*choices):
        P = SectionSpec("P", 0, components)
        if height(c, P) == 1:
            found.append(components)
    return found
