"""
discriminant groups and forms of even lattices

Elements of a finite form are tuples (a_1, ..., a_k) with 0 <= a_i < d_i in
the generators of the invariant factor decomposition. q is stored reduced to
[0, 2) and b to [0, 1).
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, prod
from typing import Iterator, Optional, Sequence

from sympy import Matrix

from app.core.config import settings
from app.core.exceptions import K3LatError, PreconditionError
from app.core.lattice import (
    IntLattice,
    Signature,
    determinant,
    direct_sum,
    is_even,
    is_primitive,
    make_standard,
    norm,
    orthogonal_complement,
    signature,
)
from app.core.normalforms import rational_span_basis, smith_form

logger = logging.getLogger(__name__)

Element = tuple[int, ...]


def mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def mod2(x: Fraction) -> Fraction:
    return x - 2 * (x.numerator // (2 * x.denominator))


@dataclass(frozen=True)
class DiscGroup:
    """L*/L with generators as rational coordinate vectors in the basis of L"""

    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    # rows of D V^-1 for the nontrivial factors: vector -> element coordinates
    coordinate_rows: tuple[tuple[int, ...], ...]
    rank: int


@dataclass(frozen=True)
class FiniteQuadraticForm:
    orders: tuple[int, ...]
    q: tuple[Fraction, ...]
    b: tuple[tuple[Fraction, ...], ...]
    label: str = field(default="", compare=False)
    group: Optional[DiscGroup] = field(default=None, compare=False)

    def __post_init__(self):
        k = len(self.orders)
        if len(self.q) != k or len(self.b) != k:
            raise K3LatError("Finite form data has inconsistent sizes")
        for i in range(k):
            for j in range(k):
                if self.b[i][j] != self.b[j][i]:
                    raise K3LatError("Finite bilinear form is not symmetric")
                if mod1(self.orders[i] * self.b[i][j]) != 0:
                    raise K3LatError(f"Order {self.orders[i]} does not kill b({i},{j})")
        if self.order <= settings.MAX_FORM_ORDER:
            self._check_polarization()

    def _check_polarization(self):
        """q(x+y) = q(x) + q(y) + 2b(x,y) mod 2; testing y over generators covers all y"""
        for x in self.elements():
            for i in range(len(self.orders)):
                e = self.unit(i)
                if mod2(self.quad(self.add(x, e)) - self.quad(x) - self.quad(e) - 2 * self.bil(x, e)) != 0:
                    raise K3LatError(f"q and b are not compatible at {x} + generator {i}")

    @property
    def order(self) -> int:
        return prod(self.orders)

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(d) for d in self.orders))

    def zero(self) -> Element:
        return tuple(0 for _ in self.orders)

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + c) % d for a, c, d in zip(x, y, self.orders))

    def scale(self, k: int, x: Element) -> Element:
        return tuple((k * a) % d for a, d in zip(x, self.orders))

    def element_order(self, x: Element) -> int:
        m = 1
        while any(a for a in self.scale(m, x)):
            m += 1
        return m

    def quad(self, x: Element) -> Fraction:
        k = len(self.orders)
        value = sum(x[i] * x[i] * self.q[i] for i in range(k) if x[i])
        value += 2 * sum(x[i] * x[j] * self.b[i][j] for i in range(k) for j in range(i + 1, k) if x[i] and x[j])
        return mod2(Fraction(value))

    def bil(self, x: Element, y: Element) -> Fraction:
        k = len(self.orders)
        return mod1(Fraction(sum(x[i] * y[j] * self.b[i][j] for i in range(k) for j in range(k) if x[i] and y[j])))

    def unit(self, i: int) -> Element:
        return tuple(int(j == i) for j in range(len(self.orders)))


@dataclass(frozen=True)
class FiniteIsometry:
    """images of the generators of the source form"""

    source: FiniteQuadraticForm
    target: FiniteQuadraticForm
    images: tuple[Element, ...]

    def __call__(self, x: Element) -> Element:
        result = self.target.zero()
        for a, image in zip(x, self.images):
            if a:
                result = self.target.add(result, self.target.scale(a, image))
        return result


@dataclass(frozen=True)
class NikulinInvariants:
    signature: Signature
    length: int
    parity: bool

    def as_dict(self) -> dict:
        return {"signature": [self.signature.pos, self.signature.neg], "length": self.length, "integer_valued": self.parity}


# ============= CONSTRUCTION =============


def discriminant_form(L: IntLattice) -> FiniteQuadraticForm:
    """(L*/L, q, b) from the smith form of the gram matrix"""
    if not is_even(L):
        raise PreconditionError(f"{L} is odd; discriminant forms need an even lattice")
    diag, _, right = smith_form(L.gram)
    v_inv = Matrix(right).inv()
    keep = [i for i, d in enumerate(diag) if d > 1]
    generators = tuple(tuple(Fraction(int(right[r][i]), diag[i]) for r in range(L.rank)) for i in keep)
    coordinate_rows = tuple(tuple(int(diag[i] * v_inv[i, c]) for c in range(L.rank)) for i in keep)
    group = DiscGroup(tuple(diag[i] for i in keep), generators, coordinate_rows, L.rank)

    q = tuple(mod2(Fraction(norm(L, g))) for g in generators)
    b = tuple(tuple(mod1(Fraction(_pair(L, g, h))) for h in generators) for g in generators)
    form = FiniteQuadraticForm(group.invariant_factors, q, b, f"q_{L.label}" if L.label else "", group)
    if form.order != abs(determinant(L)):
        raise K3LatError(f"Discriminant group order {form.order} != |det| of {L}")
    return form


def _pair(L: IntLattice, v, w):
    return sum(v[i] * L.gram[i][j] * w[j] for i in range(L.rank) for j in range(L.rank))


def element_of(F: FiniteQuadraticForm, vector: Sequence) -> Element:
    """class of a dual-lattice vector (coordinates in the lattice basis)"""
    if F.group is None:
        raise PreconditionError("Form has no lattice model")
    coords = []
    for row, d in zip(F.group.coordinate_rows, F.orders):
        value = sum(Fraction(c) * Fraction(x) for c, x in zip(row, vector))
        if value.denominator != 1:
            raise PreconditionError(f"{list(vector)} is not in the dual lattice")
        coords.append(int(value) % d)
    return tuple(coords)


def vector_of(F: FiniteQuadraticForm, x: Element) -> tuple[Fraction, ...]:
    """a dual-lattice lift of an element"""
    if F.group is None:
        raise PreconditionError("Form has no lattice model")
    return tuple(sum((a * g[r] for a, g in zip(x, F.group.generators)), Fraction(0)) for r in range(F.group.rank))


def negate(F: FiniteQuadraticForm) -> FiniteQuadraticForm:
    q = tuple(mod2(-x) for x in F.q)
    b = tuple(tuple(mod1(-x) for x in row) for row in F.b)
    return FiniteQuadraticForm(F.orders, q, b, f"-{F.label}" if F.label else "", F.group)


def orthogonal_sum(F1: FiniteQuadraticForm, F2: FiniteQuadraticForm) -> FiniteQuadraticForm:
    k1, k2 = len(F1.orders), len(F2.orders)
    b = [[Fraction(0)] * (k1 + k2) for _ in range(k1 + k2)]
    for i in range(k1):
        b[i][:k1] = F1.b[i]
    for i in range(k2):
        b[k1 + i][k1:] = F2.b[i]
    return FiniteQuadraticForm(F1.orders + F2.orders, F1.q + F2.q, tuple(tuple(r) for r in b), f"{F1.label}+{F2.label}")


# ============= ISOMETRIES =============


def _check_size(F: FiniteQuadraticForm):
    if F.order > settings.MAX_FORM_ORDER:
        raise PreconditionError(f"Finite form of order {F.order} exceeds search limit {settings.MAX_FORM_ORDER}")


def _profile(F: FiniteQuadraticForm) -> dict:
    counts: dict = {}
    for x in F.elements():
        key = (F.element_order(x), F.quad(x))
        counts[key] = counts.get(key, 0) + 1
    return counts


class _Search:
    """backtracking extension of a partial isometry from a subgroup H"""

    def __init__(self, F1: FiniteQuadraticForm, F2: FiniteQuadraticForm):
        self.F1, self.F2 = F1, F2
        self.pool: dict = {}
        for z in F2.elements():
            self.pool.setdefault((F2.element_order(z), F2.quad(z)), []).append(z)
        self.nodes = 0

    def extend(self, sigma: dict, gens: list, g: Element, z: Element) -> Optional[dict]:
        """sigma on <H, g> with g -> z, or None if that is not an isometric embedding"""
        F1, F2 = self.F1, self.F2
        if F2.quad(z) != F1.quad(g):
            return None
        if any(F2.bil(z, sigma[h]) != F1.bil(g, h) for h in gens):
            return None

        m, multiple = 1, g
        while multiple not in sigma:
            m += 1
            multiple = F1.add(multiple, g)
        if F2.scale(m, z) != sigma[multiple]:
            return None
        image_set = set(sigma.values())
        for k in range(1, m):
            if F2.scale(k, z) in image_set:
                return None

        extended = dict(sigma)
        step = F1.zero()
        step_image = F2.zero()
        for _ in range(1, m):
            step = F1.add(step, g)
            step_image = F2.add(step_image, z)
            for h, sh in sigma.items():
                extended[F1.add(h, step)] = F2.add(sh, step_image)
        return extended

    def run(self, sigma: dict, gens: list, todo: list) -> Optional[dict]:
        self.nodes += 1
        todo = [g for g in todo if g not in sigma]
        if not todo:
            return sigma
        g = todo[0]
        for z in self.pool.get((self.F1.element_order(g), self.F1.quad(g)), []):
            extended = self.extend(sigma, gens, g, z)
            if extended is not None:
                found = self.run(extended, gens + [g], todo[1:])
                if found is not None:
                    return found
        return None


def find_isometry(F1: FiniteQuadraticForm, F2: FiniteQuadraticForm, prescribed: Optional[tuple[Element, Element]] = None) -> Optional[FiniteIsometry]:
    """an isometry F1 -> F2 (optionally sending prescribed[0] to prescribed[1]), or None"""
    _check_size(F1)
    _check_size(F2)
    if F1.order != F2.order:
        return None
    if F1.order == 1:
        return FiniteIsometry(F1, F2, tuple(F2.zero() for _ in F1.orders))
    if _profile(F1) != _profile(F2):
        return None

    search = _Search(F1, F2)
    sigma = {F1.zero(): F2.zero()}
    gens: list = []
    if prescribed is not None:
        x, y = prescribed
        if F1.element_order(x) != F2.element_order(y):
            return None
        if any(x):
            sigma = search.extend(sigma, gens, x, y)
            if sigma is None:
                return None
            gens = [x]
        elif any(y):
            return None

    result = search.run(sigma, gens, [F1.unit(i) for i in range(len(F1.orders))])
    logger.debug(f"Isometry search {F1.label} -> {F2.label}: {search.nodes} nodes, found={result is not None}")
    if result is None:
        return None
    return FiniteIsometry(F1, F2, tuple(result[F1.unit(i)] for i in range(len(F1.orders))))


def find_anti_isometry(F1: FiniteQuadraticForm, F2: FiniteQuadraticForm) -> Optional[FiniteIsometry]:
    """sigma with q2(sigma x) = -q1(x); the returned map targets F2 itself"""
    found = find_isometry(F1, negate(F2))
    if found is None:
        return None
    return FiniteIsometry(F1, F2, found.images)


def is_isometry(sigma: FiniteIsometry, sign: int = 1) -> bool:
    """checks generator values and bijectivity; sign -1 checks an anti-isometry"""
    F1, F2 = sigma.source, sigma.target
    k = len(F1.orders)
    for i in range(k):
        if F2.quad(sigma.images[i]) != mod2(sign * F1.q[i]):
            return False
        for j in range(k):
            if F2.bil(sigma.images[i], sigma.images[j]) != mod1(sign * F1.b[i][j]):
                return False
        if F2.scale(F1.orders[i], sigma.images[i]) != F2.zero():
            return False
    return F1.order == F2.order and len({sigma(x) for x in F1.elements()}) == F1.order


def isometry_orbits(F: FiniteQuadraticForm) -> list[list[Element]]:
    """orbits of O(q) on the group, decided pairwise by prescribed-image searches"""
    _check_size(F)
    orbits: list[list[Element]] = []
    representatives: dict = {}
    for x in F.elements():
        key = (F.element_order(x), F.quad(x))
        for index in representatives.get(key, []):
            if find_isometry(F, F, prescribed=(orbits[index][0], x)) is not None:
                orbits[index].append(x)
                break
        else:
            representatives.setdefault(key, []).append(len(orbits))
            orbits.append([x])
    logger.info(f"Found {len(orbits)} orbits on {F.label or 'finite form'} of order {F.order}")
    return orbits


# ============= NIKULIN =============


def nikulin_invariants(L: IntLattice) -> NikulinInvariants:
    F = discriminant_form(L)
    if any(d != 2 for d in F.orders):
        raise PreconditionError(f"{L} is not 2-elementary (invariant factors {list(F.orders)})")
    integer_valued = all(x.denominator == 1 for x in F.q)
    return NikulinInvariants(signature(L), len(F.orders), integer_valued)


def nikulin_equivalent(L1: IntLattice, L2: IntLattice) -> bool:
    for L in (L1, L2):
        sig = signature(L)
        if sig.pos == 0 or sig.neg == 0:
            raise PreconditionError(f"{L} is definite; the 2-elementary criterion needs indefinite lattices")
    return nikulin_invariants(L1) == nikulin_invariants(L2)


def genus_equal(L1: IntLattice, L2: IntLattice) -> bool:
    """same signature and isometric discriminant forms (even lattices)"""
    if L1.rank != L2.rank or signature(L1) != signature(L2):
        return False
    return find_isometry(discriminant_form(L1), discriminant_form(L2)) is not None


# ============= OVERLATTICES =============


def glue_overlattice(L: IntLattice, glue: Sequence[Sequence], label: str = "") -> IntLattice:
    """L + span(glue) for isotropic dual-lattice classes given as rational vectors"""
    glue = [tuple(Fraction(x) for x in h) for h in glue]
    if not glue:
        return L
    for h in glue:
        if any(Fraction(_pair(L, h, e)).denominator != 1 for e in _units(L.rank)):
            raise PreconditionError(f"Glue vector {h} is not in the dual lattice")
        if mod2(Fraction(_pair(L, h, h))) != 0:
            raise PreconditionError(f"Non-isotropic glue: q({h}) = {mod2(Fraction(_pair(L, h, h)))}")
    for h, k in itertools.combinations(glue, 2):
        if mod1(Fraction(_pair(L, h, k))) != 0:
            raise PreconditionError("Glue classes are not mutually orthogonal")

    basis = rational_span_basis([list(e) for e in _units(L.rank)] + [list(h) for h in glue])
    gram = []
    for v in basis:
        row = []
        for w in basis:
            value = Fraction(_pair(L, v, w))
            if value.denominator != 1:
                raise K3LatError("Overlattice gram is not integral")
            row.append(int(value))
        gram.append(tuple(row))
    result = IntLattice(tuple(gram), label or f"{L.label} glued")
    if not is_even(result):
        raise PreconditionError("Glued overlattice is not even")
    return result


def _units(n: int):
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def enhance(L: IntLattice, M: IntLattice, v: Sequence[int], gamma: Optional[FiniteIsometry] = None) -> tuple[IntLattice, IntLattice]:
    """
    declare v in M algebraic: T = v^perp in M and NS = (L + <v^2>) glued along
    gamma(v/d) + u/d, where d is the divisor of v and u spans <v^2>
    """
    v = tuple(int(x) for x in v)
    if not is_primitive(v):
        raise PreconditionError(f"{v} is not primitive")
    v2 = norm(M, v)
    if v2 >= 0:
        raise PreconditionError(f"<v,v> = {v2} must be negative")

    FL, FM = discriminant_form(L), discriminant_form(M)
    if gamma is None:
        gamma = find_anti_isometry(FM, FL)
        if gamma is None:
            raise PreconditionError(f"No anti-isometry between the forms of {M} and {L}")
    elif not is_isometry(gamma, sign=-1):
        raise PreconditionError("gamma is not an anti-isometry")

    pairing = [sum(v[i] * M.gram[i][j] for i in range(M.rank)) for j in range(M.rank)]
    d = reduce(gcd, (abs(x) for x in pairing), 0)
    if d == 1:
        raise PreconditionError(f"{v} has divisor 1; its class in the discriminant group is trivial")

    v_bar = element_of(FM, [Fraction(x, d) for x in v])
    lift = vector_of(FL, gamma(v_bar))
    T = orthogonal_complement(M, v, label=f"{v}^perp in {M.label}")

    base = direct_sum(L, make_standard(f"<{v2}>"))
    NS = glue_overlattice(base, [list(lift) + [Fraction(1, d)]], label=f"NS from {L.label} along {v}")
    expected = Fraction(determinant(L) * v2, d * d)
    if determinant(NS) != expected:
        raise K3LatError(f"Enhanced determinant {determinant(NS)} != {expected}")
    logger.info(f"Enhanced {L.label} along v={v}: det NS={determinant(NS)}, det T={determinant(T)}")
    return NS, T

