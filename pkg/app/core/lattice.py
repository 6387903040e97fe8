"""
integer lattices: construction, invariants, complements, definite isometry

Lattices are immutable. Every operation returns a fresh value; the gram
matrix is stored as a tuple of tuples of ints.
"""

import itertools
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import ceil, floor, gcd, isqrt
from typing import Iterable, Iterator, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as smith_invariants

from app.core.config import settings
from app.core.exceptions import InputError, PreconditionError
from app.core.normalforms import integer_kernel

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


@dataclass(frozen=True)
class Signature:
    pos: int
    neg: int

    def __str__(self) -> str:
        return f"({self.pos},{self.neg})"


@dataclass(frozen=True)
class IntLattice:
    gram: tuple[tuple[int, ...], ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.gram)
        for row in self.gram:
            if len(row) != n:
                raise InputError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise InputError(f"Gram matrix is not symmetric at ({i},{j})")
        if n and Matrix(self.gram).det(method="bareiss") == 0:
            raise PreconditionError(f"Gram matrix of {self.label or 'lattice'} is degenerate")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def matrix(self) -> Matrix:
        return Matrix(self.gram) if self.rank else Matrix.zeros(0, 0)

    def __str__(self) -> str:
        return self.label or f"lattice of rank {self.rank}"


def from_gram(gram: Sequence[Sequence[int]], label: str = "") -> IntLattice:
    """validated lattice from raw (e.g. JSON) input"""
    try:
        rows = tuple(tuple(_as_int(x) for x in row) for row in gram)
    except TypeError:
        raise InputError("Gram matrix must be a list of integer lists")
    if not rows:
        raise InputError("Gram matrix must not be empty")
    return IntLattice(rows, label)


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        raise InputError(f"Gram entry {x!r} is not an integer")
    return x


# ============= STANDARD LATTICES =============


def root_gram(family: str, k: int) -> list[list[int]]:
    """negative definite Dynkin gram: -2 on the diagonal, 1 on edges"""
    edges: list[tuple[int, int]]
    if family == "A":
        if k < 1:
            raise InputError("A(k) needs k >= 1")
        edges = [(i, i + 1) for i in range(k - 1)]
    elif family == "D":
        if k < 4:
            raise InputError("D(k) needs k >= 4")
        # path 0..k-2, vertex k-1 hangs off k-3; far ends are k-2 and k-1
        edges = [(i, i + 1) for i in range(k - 2)] + [(k - 3, k - 1)]
    elif family == "E":
        if k not in (6, 7, 8):
            raise InputError("E(k) needs k in {6, 7, 8}")
        # path 0..k-2, vertex k-1 hangs off 2
        edges = [(i, i + 1) for i in range(k - 2)] + [(2, k - 1)]
    else:
        raise InputError(f"Unknown root family {family!r}")

    gram = [[-2 if i == j else 0 for j in range(k)] for i in range(k)]
    for i, j in edges:
        gram[i][j] = gram[j][i] = 1
    return gram


_TOKEN = re.compile(r"^(?P<body>.+?)(?:\^(?P<power>\d+))?$")


def make_standard(name: str) -> IntLattice:
    """
    standard lattices by name: U, U(a), A(k)/Ak, D(k)/Dk, E6/E7/E8, <n>,
    diag(a,b,...), T, T(2), Lambda; sums via `+` and powers via `^`
    (e.g. "U+D6^2+A1^2")
    """
    name = name.replace(" ", "")
    if not name:
        raise InputError("Empty lattice name")
    parts = name.split("+")
    if len(parts) > 1:
        return direct_sum(*[make_standard(p) for p in parts], label=name)

    match = _TOKEN.match(name)
    body, power = match.group("body"), match.group("power")
    if power is not None:
        count = int(power)
        if count < 1:
            raise InputError(f"Bad power in {name!r}")
        return direct_sum(*[make_standard(body)] * count, label=name)

    return IntLattice(_standard_gram(body), name)


def _standard_gram(body: str) -> tuple[tuple[int, ...], ...]:
    if body == "U":
        return ((0, 1), (1, 0))
    if body == "T":
        return make_standard("U^2+<-1>^2").gram
    if body == "T(2)":
        return rescale(make_standard("T"), 2).gram
    if body == "Lambda":
        return make_standard("U^3+E8^2").gram

    m = re.fullmatch(r"U\((-?\d+)\)", body)
    if m:
        a = int(m.group(1))
        if a == 0:
            raise InputError("U(a) needs a != 0")
        return ((0, a), (a, 0))

    m = re.fullmatch(r"([ADE])\(?(\d+)\)?", body)
    if m:
        return tuple(tuple(row) for row in root_gram(m.group(1), int(m.group(2))))

    m = re.fullmatch(r"<(-?\d+)>", body) or re.fullmatch(r"diag\(([-\d,]+)\)", body)
    if m:
        entries = [int(x) for x in m.group(1).split(",") if x]
        if not entries or 0 in entries:
            raise InputError(f"Diagonal lattice {body!r} needs nonzero entries")
        return tuple(tuple(e if i == j else 0 for j in range(len(entries))) for i, e in enumerate(entries))

    raise InputError(f"Unknown standard lattice {body!r}")


# ============= CONSTRUCTIONS =============


def direct_sum(*lattices: IntLattice, label: str = "") -> IntLattice:
    n = sum(L.rank for L in lattices)
    gram = [[0] * n for _ in range(n)]
    offset = 0
    for L in lattices:
        for i, row in enumerate(L.gram):
            gram[offset + i][offset : offset + L.rank] = row
        offset += L.rank
    if not label:
        label = "+".join(L.label for L in lattices if L.label)
    return IntLattice(tuple(tuple(row) for row in gram), label)


def rescale(L: IntLattice, a: int) -> IntLattice:
    if a == 0:
        raise PreconditionError("Cannot rescale a lattice by 0")
    label = f"{L.label}({a})" if L.label and a != 1 else L.label
    return IntLattice(tuple(tuple(a * x for x in row) for row in L.gram), label)


def sublattice(L: IntLattice, basis: Sequence[Sequence[int]], label: str = "") -> IntLattice:
    """the lattice spanned by integer coordinate vectors of L, with the restricted form"""
    gram = tuple(tuple(pair(L, v, w) for w in basis) for v in basis)
    return IntLattice(gram, label)


# ============= BILINEAR FORM =============


def pair(L: IntLattice, v: Sequence, w: Sequence):
    """<v, w> for coordinate vectors (ints or fractions)"""
    if len(v) != L.rank or len(w) != L.rank:
        raise InputError(f"Vector length must equal rank {L.rank}")
    return sum(v[i] * L.gram[i][j] * w[j] for i in range(L.rank) for j in range(L.rank) if L.gram[i][j] and v[i] and w[j])


def norm(L: IntLattice, v: Sequence):
    return pair(L, v, v)


def is_even(L: IntLattice) -> bool:
    return all(L.gram[i][i] % 2 == 0 for i in range(L.rank))


def is_primitive(v: Sequence[int]) -> bool:
    if not any(v):
        raise PreconditionError("Zero vector has no primitivity")
    return reduce(gcd, (abs(int(x)) for x in v)) == 1


# ============= INVARIANTS =============


def _diagonal_entries(gram: Sequence[Sequence]) -> list[Fraction]:
    """exact congruence diagonalization by symmetric elimination"""
    m = [[Fraction(x) for x in row] for row in gram]
    diagonal: list[Fraction] = []
    while m:
        n = len(m)
        pivot = next((i for i in range(n) if m[i][i] != 0), None)
        if pivot is None:
            hit = next(((i, j) for i in range(n) for j in range(n) if m[i][j] != 0), None)
            if hit is None:
                diagonal.extend([Fraction(0)] * n)
                break
            # e_i -> e_i + e_j makes the diagonal entry 2 m_ij
            i, j = hit
            m[i] = [a + b for a, b in zip(m[i], m[j])]
            for row in m:
                row[i] += row[j]
            pivot = i
        p = m[pivot][pivot]
        diagonal.append(p)
        rest = [k for k in range(n) if k != pivot]
        m = [[m[a][b] - m[a][pivot] * m[pivot][b] / p for b in rest] for a in rest]
    return diagonal


def diagonalize(L: IntLattice) -> list[Fraction]:
    return _diagonal_entries(L.gram)


def signature(L: IntLattice) -> Signature:
    entries = _diagonal_entries(L.gram)
    return Signature(sum(1 for d in entries if d > 0), sum(1 for d in entries if d < 0))


def determinant(L: IntLattice) -> int:
    if L.rank == 0:
        return 1
    return int(L.matrix().det(method="bareiss"))


def invariant_factors(L: IntLattice) -> list[int]:
    """invariant factors > 1 of the discriminant group"""
    if L.rank == 0:
        return []
    return [abs(int(d)) for d in smith_invariants(L.matrix(), domain=ZZ) if abs(d) > 1]


def scale_and_norm(L: IntLattice) -> tuple[int, int]:
    entries = [abs(x) for row in L.gram for x in row]
    scale = reduce(gcd, entries, 0)
    norms = [abs(L.gram[i][i]) for i in range(L.rank)]
    norms += [2 * abs(L.gram[i][j]) for i in range(L.rank) for j in range(i + 1, L.rank)]
    return scale, reduce(gcd, norms, 0)


def lattice_invariants(L: IntLattice) -> tuple:
    """(rank, signature, determinant, even, invariant factors)"""
    return (L.rank, signature(L), determinant(L), is_even(L), tuple(invariant_factors(L)))


# ============= COMPLEMENTS =============


def complement_basis(L: IntLattice, vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """saturated basis of {w in L : <w, v> = 0 for all v}"""
    rows = []
    for v in vectors:
        if len(v) != L.rank:
            raise InputError(f"Vector length must equal rank {L.rank}")
        if not any(v):
            raise PreconditionError("Cannot take the complement of the zero vector")
        rows.append([sum(v[i] * L.gram[i][j] for i in range(L.rank)) for j in range(L.rank)])
    return integer_kernel(rows, L.rank)


def orthogonal_complement(L: IntLattice, vectors: Sequence[int] | Sequence[Sequence[int]], label: str = "") -> IntLattice:
    if vectors and isinstance(vectors[0], int):
        vectors = [vectors]
    basis = complement_basis(L, vectors)
    try:
        return sublattice(L, basis, label or f"complement in {L.label or 'lattice'}")
    except PreconditionError:
        raise PreconditionError("Orthogonal complement is degenerate")


# ============= DEFINITE ISOMETRY =============


def _cholesky(gram: Sequence[Sequence[int]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """x^T G x = sum_i q_i (x_i + sum_{j>i} mu_ij x_j)^2"""
    n = len(gram)
    q = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        q[i] = Fraction(gram[i][i]) - sum(q[k] * mu[k][i] ** 2 for k in range(i))
        for j in range(i + 1, n):
            mu[i][j] = (Fraction(gram[i][j]) - sum(q[k] * mu[k][i] * mu[k][j] for k in range(i))) / q[i]
    return q, mu


def short_vectors(L: IntLattice, bound: int) -> Iterator[Vector]:
    """nonzero x with 0 < <x,x> <= bound in a positive definite lattice"""
    n = L.rank
    q, mu = _cholesky(L.gram)
    x = [0] * n

    def walk(i: int, remaining: Fraction) -> Iterator[Vector]:
        if i < 0:
            yield tuple(x)
            return
        center = -sum(mu[i][j] * x[j] for j in range(i + 1, n))
        radius = isqrt(floor(remaining / q[i])) + 1
        for xi in range(floor(center) - radius, ceil(center) + radius + 1):
            used = q[i] * (xi - center) ** 2
            if used <= remaining:
                x[i] = xi
                yield from walk(i - 1, remaining - used)
        x[i] = 0

    for v in walk(n - 1, Fraction(bound)):
        if any(v):
            yield v


def is_definite(L: IntLattice) -> bool:
    sig = signature(L)
    return sig.pos == 0 or sig.neg == 0


def is_isometric_definite(L1: IntLattice, L2: IntLattice) -> bool:
    """isometry of definite lattices by matching basis images among short vectors"""
    for L in (L1, L2):
        if not is_definite(L):
            raise PreconditionError(f"{L} is indefinite")
        if L.rank > settings.MAX_DEFINITE_RANK:
            raise PreconditionError(f"{L} has rank {L.rank} > {settings.MAX_DEFINITE_RANK}")
    if L1.rank != L2.rank or signature(L1) != signature(L2) or determinant(L1) != determinant(L2):
        return False
    if L1.rank == 0:
        return True
    if signature(L1).pos == 0:
        L1, L2 = rescale(L1, -1), rescale(L2, -1)

    n = L1.rank
    bound = max(L1.gram[i][i] for i in range(n))
    by_norm: dict[int, list[Vector]] = {}
    for v in short_vectors(L2, bound):
        by_norm.setdefault(norm(L2, v), []).append(v)

    images: list[Vector] = []

    def extend(i: int) -> bool:
        if i == n:
            return True
        for w in by_norm.get(L1.gram[i][i], []):
            if all(pair(L2, images[j], w) == L1.gram[j][i] for j in range(i)):
                images.append(w)
                if extend(i + 1):
                    return True
                images.pop()
        return False

    found = extend(0)
    logger.debug(f"Definite isometry search {L1} vs {L2}: {found}")
    return found


def vectors_in_box(rank: int, radius: int) -> Iterable[Vector]:
    return itertools.product(range(-radius, radius + 1), repeat=rank)
