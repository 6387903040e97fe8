"""
integer normal forms with unimodular transforms, on top of sympy's
smith and hermite forms over ZZ
"""

from fractions import Fraction
from math import lcm
from typing import Sequence

from sympy import Matrix, ZZ, eye
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp

IntMatrix = list[list[int]]


def _rows(M: Matrix) -> IntMatrix:
    return [[int(x) for x in M.row(i)] for i in range(M.rows)]


def smith_form(matrix: Sequence[Sequence[int]]) -> tuple[list[int], IntMatrix, IntMatrix]:
    """
    smith normal form: returns (diag, left, right) with left * matrix * right = D,
    diag the min(m, n) diagonal entries, nonnegative, each dividing the next
    (zeros last)
    """
    M = Matrix(matrix)
    rows, cols = M.shape
    k = min(rows, cols)
    if k == 0:
        return [], _rows(eye(rows)), _rows(eye(cols))
    D, S, T = smith_normal_decomp(M, domain=ZZ)
    S, T = Matrix(S), Matrix(T)
    diag = [int(D[i, i]) for i in range(k)]

    for i, d in enumerate(diag):
        if d < 0:
            diag[i] = -d
            S[i, :] = -S[i, :]

    order = sorted(range(k), key=lambda i: (diag[i] == 0, diag[i]))
    S = Matrix.vstack(*[S.row(i) for i in order], *[S.row(i) for i in range(k, rows)])
    T = Matrix.hstack(*[T.col(i) for i in order], *[T.col(i) for i in range(k, cols)])
    return [diag[i] for i in order], _rows(S), _rows(T)


def hermite_rows(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """row hermite normal form of the row lattice; zero rows dropped"""
    rows = [[int(x) for x in row] for row in rows if any(row)]
    if not rows:
        return []
    H = hermite_normal_form(Matrix(rows).T)
    return _rows(H.T)


def rational_span_basis(vectors: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """a basis of the Z-module spanned by rational vectors (hermite form, canonical)"""
    vectors = [[Fraction(x) for x in v] for v in vectors]
    if not vectors:
        return []
    denom = lcm(*[x.denominator for v in vectors for x in v])
    scaled = [[int(x * denom) for x in v] for v in vectors]
    return [[Fraction(x, denom) for x in row] for row in hermite_rows(scaled)]


def integer_kernel(matrix: Sequence[Sequence[int]], width: int) -> IntMatrix:
    """saturated basis (hermite rows) of {x in Z^width : matrix * x = 0}"""
    if not matrix:
        return [[int(i == j) for j in range(width)] for i in range(width)]
    diag, _, right = smith_form(matrix)
    rank = sum(1 for d in diag if d != 0)
    kernel = [[right[i][j] for i in range(width)] for j in range(rank, width)]
    return hermite_rows(kernel)
