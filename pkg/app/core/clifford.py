"""
quaternion algebras over Q, Hilbert symbols, Hasse invariants and the even
Clifford algebras of small diagonal forms

Brauer classes of quaternion algebras are carried as ramification sets.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Sequence, Union

from sympy import factorint, legendre_symbol

from app.core.config import settings
from app.core.exceptions import K3LatError, PreconditionError

logger = logging.getLogger(__name__)

INFINITY = "inf"
Place = Union[int, str]
RamificationSet = frozenset


@dataclass(frozen=True)
class QuaternionAlgebra:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        if self.a == 0 or self.b == 0:
            raise PreconditionError("Quaternion symbol entries must be nonzero")

    def __str__(self) -> str:
        return f"({self.a},{self.b})_Q"


@dataclass(frozen=True)
class RationalFormClass:
    """isometry class over Q: rank, signature, discriminant mod squares, places with Hasse -1"""

    rank: int
    signature: tuple[int, int]
    discriminant: int
    hasse_minus: frozenset


@dataclass(frozen=True)
class CliffordDescriptor:
    rank: int
    symbols: tuple[QuaternionAlgebra, ...]
    brauer: frozenset
    center: Optional[int] = None
    description: str = ""


@dataclass(frozen=True)
class KSReport:
    delta: int
    clifford_even: str
    is_split: bool
    ks_dimension: int
    decomposition: str
    ramification: tuple = field(default_factory=tuple)


# ============= ARITHMETIC =============


def factorize(n: int) -> dict[int, int]:
    """prime factorization by trial division up to FACTOR_LIMIT"""
    n = abs(int(n))
    if n == 0:
        raise PreconditionError("Cannot factor 0")
    limit = settings.FACTOR_LIMIT
    factors = factorint(n, limit=limit, use_rho=False, use_pm1=False)
    for p in factors:
        if p > limit and p >= limit * limit:
            raise PreconditionError(f"Cofactor {p} is beyond the trial division limit {limit}")
    return factors


def _prime_support(values: Iterable[Fraction]) -> set[int]:
    primes: set[int] = set()
    for x in values:
        x = Fraction(x)
        primes.update(factorize(x.numerator))
        primes.update(factorize(x.denominator))
    return primes


def squarefree_part(x: Fraction) -> int:
    """the squarefree integer in the square class of a nonzero rational"""
    x = Fraction(x)
    if x == 0:
        raise PreconditionError("Zero has no square class")
    n = x.numerator * x.denominator
    result = -1 if n < 0 else 1
    for p, e in factorize(n).items():
        if e % 2:
            result *= p
    return result


def _split_valuation(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def hilbert_symbol(a, b, p: Place) -> int:
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise PreconditionError("Hilbert symbol needs nonzero entries")
    if p == INFINITY:
        return -1 if a < 0 and b < 0 else 1

    # a * den^2 is in the square class of a
    alpha, u = _split_valuation(a.numerator * a.denominator, p)
    beta, v = _split_valuation(b.numerator * b.denominator, p)
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2  # noqa: E731
        omega = lambda t: ((t * t - 1) // 8) % 2  # noqa: E731
        exponent = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if exponent % 2 else 1

    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= legendre_symbol(u % p, p)
    if alpha % 2:
        sign *= legendre_symbol(v % p, p)
    return sign


def candidate_places(values: Iterable[Fraction]) -> list[Place]:
    return [INFINITY, 2] + sorted(p for p in _prime_support(values) if p != 2)


# ============= QUATERNION ALGEBRAS =============


def ramification(Q: QuaternionAlgebra) -> RamificationSet:
    places = frozenset(v for v in candidate_places([Q.a, Q.b]) if hilbert_symbol(Q.a, Q.b, v) == -1)
    if len(places) % 2:
        raise K3LatError(f"Odd ramification {sorted(map(str, places))} for {Q}")
    return places


def quat_is_split(Q: QuaternionAlgebra) -> bool:
    return not ramification(Q)


def brauer_tensor(R1: RamificationSet, R2: RamificationSet) -> RamificationSet:
    for R in (R1, R2):
        if len(R) % 2:
            raise PreconditionError(f"Ramification set {sorted(map(str, R))} has odd size")
    return frozenset(R1) ^ frozenset(R2)


def sum_of_two_squares(delta: int) -> bool:
    if delta < 1:
        raise PreconditionError("Delta must be positive")
    return all(e % 2 == 0 for p, e in factorize(delta).items() if p % 4 == 3)


def two_squares(delta: int) -> Optional[tuple[int, int]]:
    """a, b >= 0 with a^2 + b^2 = delta, smallest a first"""
    for a in range(isqrt(delta) + 1):
        b = isqrt(delta - a * a)
        if b * b == delta - a * a:
            return (a, b)
    return None


# ============= QUADRATIC FORMS OVER Q =============


def hasse_invariant(coefficients: Sequence, p: Place) -> int:
    coefficients = [Fraction(c) for c in coefficients]
    result = 1
    for i in range(len(coefficients)):
        for j in range(i + 1, len(coefficients)):
            result *= hilbert_symbol(coefficients[i], coefficients[j], p)
    return result


def rational_class(coefficients: Sequence) -> RationalFormClass:
    coefficients = [Fraction(c) for c in coefficients]
    if any(c == 0 for c in coefficients):
        raise PreconditionError("Diagonal form has a zero coefficient")
    discriminant = Fraction(1)
    for c in coefficients:
        discriminant *= c
    minus = frozenset(p for p in candidate_places(coefficients) if hasse_invariant(coefficients, p) == -1)
    sig = (sum(1 for c in coefficients if c > 0), sum(1 for c in coefficients if c < 0))
    return RationalFormClass(len(coefficients), sig, squarefree_part(discriminant), minus)


def rational_equivalence(f1: Sequence, f2: Sequence) -> bool:
    return rational_class(f1) == rational_class(f2)


# ============= CLIFFORD ALGEBRAS =============


def rank2_clifford(a, b) -> int:
    """Cl+(<a> + <b>) = Q(sqrt d); returns the squarefree d"""
    return squarefree_part(-Fraction(a) * Fraction(b))


def even_clifford(coefficients: Sequence) -> CliffordDescriptor:
    a = [Fraction(c) for c in coefficients]
    m = len(a)
    if any(c == 0 for c in a):
        raise PreconditionError("Diagonal form has a zero coefficient")
    if m == 3:
        Q = QuaternionAlgebra(-a[0] * a[1], -a[1] * a[2])
        return CliffordDescriptor(3, (Q,), ramification(Q), description=str(Q))
    if m == 4:
        Q = QuaternionAlgebra(-a[0] * a[1], -a[1] * a[3])
        d = squarefree_part(a[0] * a[1] * a[2] * a[3])
        return CliffordDescriptor(4, (Q,), ramification(Q), center=d, description=f"{Q} over Q(sqrt {d})")
    if m == 5:
        Q1 = QuaternionAlgebra(-a[0] * a[1], -a[1] * a[2])
        Q2 = QuaternionAlgebra(a[0] * a[1] * a[2] * a[3], -a[3] * a[4])
        brauer = brauer_tensor(ramification(Q1), ramification(Q2))
        return CliffordDescriptor(5, (Q1, Q2), brauer, description=f"{Q1} (x) {Q2}")
    raise PreconditionError(f"Even Clifford algebra of rank {m} is not supported (3, 4 or 5)")


def kuga_satake_report(delta: int) -> KSReport:
    if delta < 1:
        raise PreconditionError("Delta must be positive")
    cl = even_clifford([2, -2, -2, -2, 2 * delta])
    target = ramification(QuaternionAlgebra(Fraction(-1), Fraction(delta)))
    if cl.brauer != target:
        raise K3LatError(f"Clifford class {sorted(map(str, cl.brauer))} != class of (-1,{delta})")
    split = sum_of_two_squares(delta)
    if split != (not target):
        raise K3LatError(f"Two-squares criterion disagrees with the Hilbert symbols at delta={delta}")
    logger.debug(f"Kuga-Satake data for delta={delta}: split={split}")
    return KSReport(
        delta=delta,
        clifford_even=f"M_2((-1,{delta})_Q)",
        is_split=split,
        ks_dimension=2 ** (6 - 2),
        decomposition=f"A(T_{delta}) ~ A_{delta}^2",
        ramification=tuple(sorted(target, key=str)),
    )
