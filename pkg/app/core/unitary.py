"""
SU(2,2; Z[i]) acting on T through the wedge square

V = Q(i)^4 with basis a1, a2, b1, b2 and the anti-hermitian form with gram iJ,
J = [[0, I], [-I, 0]]. On Lambda^2 V the wedge pairing v ^ w = q(v, w) a1^a2^b1^b2
gives the real basis

  f1 = e12, f2 = -e34, f3 = e14, f4 = -e23, f5 = e13, f6 = e24

in which -q is U + U + [[0,1],[1,0]]. The integral structure T is spanned by
g1..g4 = f1..f4, g5 = w f5 - conj(w) f6, g6 = -conj(w) f5 + w f6, w = (-1+i)/2,
where -q has gram U + U + <-1> + <-1>.
"""

import logging
import random
from typing import Optional, Sequence

import sympy as sp
from sympy import I, Matrix, Rational

from app.core.exceptions import InputError, K3LatError, PreconditionError
from app.core.lattice import make_standard
from app.core.orbits import display_to_t

logger = logging.getLogger(__name__)

# index pairs and signs of f1..f6 in terms of e_ij = e_i ^ e_j
F_BASIS = (((0, 1), 1), ((2, 3), -1), ((0, 3), 1), ((1, 2), -1), ((0, 2), 1), ((1, 3), 1))
# plucker coordinate order of period points
PLUCKER_PAIRS = ((0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2))

OMEGA = Rational(-1, 2) + I / 2
J = Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
T_GRAM = Matrix(make_standard("T").gram)


def _basis_change() -> Matrix:
    """columns: g-basis in f-coordinates"""
    P = sp.eye(6)
    w, wb = OMEGA, sp.conjugate(OMEGA)
    P[4, 4], P[5, 4] = w, -wb
    P[4, 5], P[5, 5] = -wb, w
    return P


G_FROM_F = _basis_change()
F_FROM_G = G_FROM_F.inv().applyfunc(sp.expand)


def _clean(M: Matrix) -> Matrix:
    return M.applyfunc(sp.expand)


def is_zero_matrix(M: Matrix) -> bool:
    return all(sp.expand(x) == 0 for x in M)


def matrices_equal(A: Matrix, B: Matrix) -> bool:
    return A.shape == B.shape and is_zero_matrix(A - B)


def from_entries(rows: Sequence[Sequence]) -> Matrix:
    """matrix from [re_num, re_den, im_num, im_den] entries"""
    try:
        return Matrix([[Rational(e[0], e[1]) + I * Rational(e[2], e[3]) for e in row] for row in rows])
    except (TypeError, ValueError, IndexError, ZeroDivisionError):
        raise InputError("Gaussian entries must be [re_num, re_den, im_num, im_den] with nonzero denominators")


def _gaussian_integral(x) -> bool:
    re, im = sp.re(x), sp.im(x)
    return re.is_integer and im.is_integer


# ============= UNITARY GROUP =============


def is_u22(A: Matrix, special: bool = False) -> bool:
    """A*(iJ)A = iJ exactly; special also asks det A = 1"""
    if A.shape != (4, 4):
        raise InputError("Expected a 4x4 matrix")
    if not matrices_equal(A.H * J * A, J):
        return False
    return not special or sp.expand(A.det() - 1) == 0


def in_congruence_subgroup(A: Matrix) -> bool:
    """A = I mod (1 + i) over Z[i]"""
    for x in _clean(A - sp.eye(A.rows)):
        re, im = sp.re(x), sp.im(x)
        if not (re.is_integer and im.is_integer) or (re + im) % 2:
            return False
    return True


def _hermitian(rng: random.Random, congruence: bool) -> Matrix:
    if congruence:
        d1, d2 = 2 * rng.randint(-1, 1), 2 * rng.randint(-1, 1)
        z = (1 + I) * (rng.randint(-1, 1) + I * rng.randint(-1, 1))
    else:
        d1, d2 = rng.randint(-2, 2), rng.randint(-2, 2)
        z = rng.randint(-1, 1) + I * rng.randint(-1, 1)
    return _clean(Matrix([[d1, z], [sp.conjugate(z), d2]]))


def _levi(rng: random.Random, congruence: bool) -> Matrix:
    choices = [Matrix([[1, 1 + I], [0, 1]]), Matrix([[1, 0], [1 + I, 1]]), Matrix([[I, 0], [0, -I]])]
    if not congruence:
        choices += [Matrix([[1, I], [0, 1]]), Matrix([[0, 1], [-1, 0]]), Matrix([[1, 0], [1, 1]])]
    return rng.choice(choices)


def _block(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Matrix:
    return Matrix(sp.BlockMatrix([[a, b], [c, d]]))


def su22_generators(congruence: bool = False) -> list[Matrix]:
    """verified elements: transvections by hermitian S, Levi blocks diag(P, P*^-1) and J"""
    E, Z = sp.eye(2), sp.zeros(2)
    if congruence:
        hermitians = [Matrix([[2, 0], [0, 0]]), Matrix([[0, 1 + I], [1 - I, 0]])]
        levis = [Matrix([[1, 1 + I], [0, 1]]), Matrix([[I, 0], [0, -I]])]
    else:
        hermitians = [Matrix([[1, 0], [0, 0]]), Matrix([[0, 1], [1, 0]]), Matrix([[0, I], [-I, 0]])]
        levis = [Matrix([[1, I], [0, 1]]), Matrix([[0, 1], [-1, 0]])]
    result = []
    for S in hermitians:
        result.append(_block(E, S, Z, E))
        result.append(_block(E, Z, S, E))
    for P in levis:
        result.append(_block(P, Z, Z, _clean(P.H.inv())))
    if not congruence:
        result.append(J)
    for A in result:
        if not is_u22(A, special=True):
            raise K3LatError(f"Generator {A.tolist()} is not in SU(2,2)")
    return result


def random_su22(rng: random.Random, length: int = 4, congruence: bool = False) -> Matrix:
    """a random word of the given length in transvections and Levi blocks"""
    E, Z = sp.eye(2), sp.zeros(2)
    A = sp.eye(4)
    for _ in range(length):
        kind = rng.randrange(3 if congruence else 4)
        if kind == 0:
            step = _block(E, _hermitian(rng, congruence), Z, E)
        elif kind == 1:
            step = _block(E, Z, _hermitian(rng, congruence), E)
        elif kind == 2:
            P = _levi(rng, congruence)
            step = _block(P, Z, Z, _clean(P.H.inv()))
        else:
            step = J
        A = _clean(A * step)
    if not is_u22(A, special=True):
        raise K3LatError("Random word left SU(2,2)")
    return A


# ============= WEDGE SQUARE AND PHI =============


def wedge_square(A: Matrix) -> Matrix:
    """Lambda^2 A in the f-basis; column b holds the image of f_b"""
    if A.shape != (4, 4):
        raise InputError("Expected a 4x4 matrix")
    W = sp.zeros(6)
    for a, ((k, l), sa) in enumerate(F_BASIS):
        for b, ((i, j), sb) in enumerate(F_BASIS):
            W[a, b] = sp.expand(sa * sb * (A[k, i] * A[l, j] - A[k, j] * A[l, i]))
    return W


def phi(A: Matrix) -> Matrix:
    """the integral isometry of T induced by A in SU(2,2; Z[i]), in the g-basis"""
    if not is_u22(A, special=True):
        raise PreconditionError("Matrix is not in SU(2,2)")
    if not all(_gaussian_integral(x) for x in A):
        raise PreconditionError("Matrix entries are not Gaussian integers")
    g = _clean(F_FROM_G * wedge_square(A) * G_FROM_F)
    if not all(x.is_integer for x in g):
        raise PreconditionError(f"phi(A) is not integral: {g.tolist()}")
    g = g.applyfunc(int)
    if not is_t_isometry(g):
        raise K3LatError("phi(A) does not preserve the form of T")
    return g


def is_t_isometry(g: Matrix) -> bool:
    return g.shape == (6, 6) and g.T * T_GRAM * g == T_GRAM


def tau_tilde() -> Matrix:
    g = sp.eye(6)
    g[4, 4] = g[5, 5] = 0
    g[4, 5] = g[5, 4] = 1
    return g


def in_so_plus(g: Matrix) -> bool:
    """det 1 and the orientation of positive 2-planes preserved"""
    if not is_t_isometry(g) or g.det() != 1:
        return False
    plane = [Matrix([1, 1, 0, 0, 0, 0]), Matrix([0, 0, 1, 1, 0, 0])]
    pairings = Matrix(2, 2, lambda i, j: ((g * plane[i]).T * T_GRAM * plane[j])[0, 0])
    return bool(pairings.det() > 0)


def congruent_mod_2(g: Matrix) -> bool:
    return bool(all(int(x) % 2 == 0 for x in g - sp.eye(6)))


# ============= EXCHANGE CONSTANTS =============

EXCHANGE_C = sp.diag(1, 1, -1, -1, 1, 1)
EXCHANGE_A = sp.diag(1, 1, 1, 1, Matrix([[0, 1], [1, 0]]))


def exchange_properties(k: int) -> dict[str, bool]:
    """stated properties of c and a, tested on the orbit representatives for a given k"""
    ordinary, odd = Matrix([1, -k, 0, 0, 0, 0]), Matrix([1, -k, 0, 0, 1, 0])
    checks = {
        "c_isometry": is_t_isometry(EXCHANGE_C),
        "c_det_1": EXCHANGE_C.det() == 1,
        "c_not_so_plus": not in_so_plus(EXCHANGE_C),
        "a_isometry": is_t_isometry(EXCHANGE_A),
        "a_det_minus_1": EXCHANGE_A.det() == -1,
        "a_moves_odd_rep": EXCHANGE_A * odd == Matrix([1, -k, 0, 0, 0, 1]),
        "fix_ordinary_rep": EXCHANGE_C * ordinary == ordinary and EXCHANGE_A * ordinary == ordinary,
    }
    if k % 4 == 1:
        characteristic = Matrix([2, (1 - k) // 2, 0, 0, 1, 1])
        checks["fix_characteristic_rep"] = EXCHANGE_C * characteristic == characteristic and EXCHANGE_A * characteristic == characteristic
    return checks


# ============= SKEW MATRICES =============


def m_of_y(y: Sequence[int]) -> Matrix:
    if len(y) != 6:
        raise InputError("y needs 6 coordinates")
    y1, y2, y3, y4, y5, y6 = (sp.Integer(c) for c in y)
    m12, m13, m14 = -y2, (y5 - I * y6) / 2, -y4
    m23, m24, m34 = -y3, -(y5 + I * y6) / 2, -y1
    return _clean(Matrix([[0, m12, m13, m14], [-m12, 0, m23, m24], [-m13, -m23, 0, m34], [-m14, -m24, -m34, 0]]))


def is_skew(M: Matrix) -> bool:
    return M.is_square and is_zero_matrix(M.T + M)


def pfaffian(M: Matrix):
    if M.shape != (4, 4) or not is_skew(M):
        raise PreconditionError("Pfaffian needs a skew-symmetric 4x4 matrix")
    return sp.expand(M[0, 1] * M[2, 3] - M[0, 2] * M[1, 3] + M[0, 3] * M[1, 2])


def y_of_skew(N: Matrix) -> tuple[int, ...]:
    """inverse of m_of_y; fails when N is not of that shape"""
    if not is_skew(N):
        raise K3LatError("Transformed matrix is not skew")
    two13 = sp.expand(2 * N[0, 2])
    z = [-N[2, 3], -N[0, 1], -N[1, 2], -N[0, 3], sp.re(two13), -sp.im(two13)]
    z = [sp.expand(c) for c in z]
    if not all(c.is_integer for c in z):
        raise K3LatError(f"Transformed matrix has non-integral coordinates {z}")
    z = tuple(int(c) for c in z)
    if not matrices_equal(N, m_of_y(z)):
        raise K3LatError("Transformed matrix is not of the form M(z)")
    return z


def pfaffian_equivariance(A: Matrix, y: Sequence[int]) -> bool:
    """A^T M(y) A = M(z) with z the image of y under phi(A)^-1 (display coordinates)"""
    g = phi(A)
    z = y_of_skew(_clean(A.T * m_of_y(y) * A))
    expected = g.inv() * Matrix(display_to_t(y))
    same = expected == Matrix(display_to_t(z))
    if not same:
        logger.warning(f"Equivariance fails for y={tuple(y)}: got z={z}")
    return same


# ============= SIEGEL DOMAIN =============


def _check_2x2(W: Matrix):
    if W.shape != (2, 2):
        raise InputError("Expected a 2x2 matrix")


def imaginary_part(W: Matrix) -> Matrix:
    _check_2x2(W)
    return _clean((W - W.H) / (2 * I))


def in_H2(W: Matrix) -> bool:
    K = imaginary_part(W)
    k11, det = sp.re(K[0, 0]), sp.expand(K.det())
    return bool(k11 > 0 and sp.re(det) > 0)


def divisor_membership(W: Matrix, y: Sequence[int]) -> bool:
    if not in_H2(W):
        raise PreconditionError("W is not in H_2")
    stacked = W.col_join(sp.eye(2))
    return is_zero_matrix(stacked.T * m_of_y(y) * stacked)


def period_point(W: Matrix) -> tuple:
    """plucker coordinates (p12, p34, p13, p24, p14, p23) of the rows of (W | I)"""
    _check_2x2(W)
    rows = W.row_join(sp.eye(2))
    return tuple(sp.expand(rows[0, i] * rows[1, j] - rows[0, j] * rows[1, i]) for i, j in PLUCKER_PAIRS)


def plucker_relation(z: Sequence):
    p12, p34, p13, p24, p14, p23 = z
    return sp.expand(p12 * p34 - p13 * p24 + p14 * p23)


def hermitian_value(z: Sequence):
    """the hermitian form on plucker vectors; 4 det Im(W) on period points"""
    p12, p34, p13, p24, p14, p23 = (sp.sympify(c) for c in z)
    c = sp.conjugate
    value = 2 * sp.re(c(p12) * p34) + sp.expand(c(p13) * p13) + sp.expand(c(p24) * p24) + 2 * sp.re(c(p14) * p23)
    return sp.expand(-value)


def sample_w(rng: Optional[random.Random] = None, bound: int = 3) -> Matrix:
    """random 2x2 Gaussian-integer matrix"""
    rng = rng or random.Random()
    return Matrix(2, 2, lambda i, j: rng.randint(-bound, bound) + I * rng.randint(-bound, bound))
