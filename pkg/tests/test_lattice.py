"""tests for integral lattices and normal forms"""

import itertools

import pytest

from app.core.exceptions import InputError, PreconditionError
from app.core.lattice import (
    Signature,
    determinant,
    direct_sum,
    from_gram,
    invariant_factors,
    is_even,
    is_isometric_definite,
    is_primitive,
    make_standard,
    norm,
    orthogonal_complement,
    pair,
    rescale,
    root_gram,
    scale_and_norm,
    short_vectors,
    signature,
    vectors_in_box,
)
from app.core.normalforms import hermite_rows, integer_kernel, rational_span_basis, smith_form


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


# ============= NORMAL FORMS =============


def test_smith_form_diagonal():
    """test smith form divisibility chain and transforms"""
    matrix = [[2, 4], [6, 8]]
    diag, left, right = smith_form(matrix)
    assert diag == [2, 4]
    assert _matmul(_matmul(left, matrix), right) == [[2, 0], [0, 4]]


def test_smith_form_of_coprime_diagonal():
    """test diag(2, 3) => diag(1, 6)"""
    diag, _, _ = smith_form([[2, 0], [0, 3]])
    assert diag == [1, 6]


def test_smith_form_puts_zeros_last():
    """test a rank one matrix => diag (1, 0) with working transforms"""
    matrix = [[1, 2], [2, 4]]
    diag, left, right = smith_form(matrix)
    assert diag == [1, 0]
    assert _matmul(_matmul(left, matrix), right) == [[1, 0], [0, 0]]


def test_smith_form_rectangular():
    """test a 2x3 matrix keeps transforms of the right shapes"""
    matrix = [[0, 2, 4], [2, 0, 6]]
    diag, left, right = smith_form(matrix)
    assert diag == [2, 2]
    assert len(left) == 2 and len(right) == 3
    assert _matmul(_matmul(left, matrix), right) == [[2, 0, 0], [0, 2, 0]]


def test_hermite_rows_drops_dependent_rows():
    """test dependent rows collapse"""
    rows = hermite_rows([[2, 4], [1, 2], [0, 0]])
    assert rows == [[1, 2]]


def test_integer_kernel_is_saturated():
    """test kernel of (2, 2) is spanned by (1, -1)"""
    kernel = integer_kernel([[2, 2]], 2)
    assert len(kernel) == 1
    assert [abs(x) for x in kernel[0]] == [1, 1]
    assert kernel[0][0] + kernel[0][1] == 0


def test_rational_span_basis_adds_half_vector():
    """test Z^2 plus (1/2, 1/2) has index 2"""
    basis = rational_span_basis([[1, 0], [0, 1], ["1/2", "1/2"]])
    det = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0]
    assert abs(det) == 0.5


# ============= CONSTRUCTION =============


def test_from_gram_rejects_asymmetric():
    """test non-symmetric gram => InputError"""
    with pytest.raises(InputError):
        from_gram([[0, 1], [2, 0]])


def test_from_gram_rejects_degenerate():
    """test degenerate gram => PreconditionError"""
    with pytest.raises(PreconditionError):
        from_gram([[2, 2], [2, 2]])


def test_from_gram_rejects_non_integer():
    """test fractional entries => InputError"""
    with pytest.raises(InputError):
        from_gram([[0.5, 0], [0, 1]])


def test_root_gram_shapes():
    """test D4 has a trivalent vertex"""
    gram = root_gram("D", 4)
    assert [sum(1 for x in row if x == 1) for row in gram] == [1, 3, 1, 1]
    with pytest.raises(InputError):
        root_gram("D", 3)


@pytest.mark.parametrize(
    "name,det",
    [
        ("U", -1),
        ("A1", -2),
        ("A3", -4),
        ("D4", 4),
        ("D6", 4),
        ("E6", 3),
        ("E7", -2),
        ("E8", 1),
        ("U(2)", -4),
        ("<4>", 4),
    ],
)
def test_standard_determinants(name, det):
    """test determinants of standard lattices"""
    assert determinant(make_standard(name)) == det


def test_generic_ns_invariants():
    """test U + D6^2 + A1^2 has det -64 and signature (1,15)"""
    L = make_standard("U+D6^2+A1^2")
    assert L.rank == 16
    assert determinant(L) == -64
    assert signature(L) == Signature(1, 15)
    assert invariant_factors(L) == [2] * 6


def test_k3_lattice():
    """test Lambda is even unimodular of signature (3,19)"""
    L = make_standard("Lambda")
    assert L.rank == 22
    assert abs(determinant(L)) == 1
    assert signature(L) == Signature(3, 19)
    assert is_even(L)


def test_t_lattices():
    """test T is odd unimodular and T(2) is its even rescaling"""
    T, T2 = make_standard("T"), make_standard("T(2)")
    assert not is_even(T)
    assert is_even(T2)
    assert T2.gram == rescale(T, 2).gram
    assert signature(T) == Signature(2, 4)


def test_direct_sum_label():
    """test direct sum builds block gram and joined label"""
    L = direct_sum(make_standard("U"), make_standard("A1"))
    assert L.label == "U+A1"
    assert L.gram == ((0, 1, 0), (1, 0, 0), (0, 0, -2))


def test_unknown_lattice_name():
    """test unknown names => InputError"""
    with pytest.raises(InputError):
        make_standard("F4")


# ============= INVARIANTS =============


def test_scale_and_norm():
    """test U(2) has scale 2 and norm 4, A1 has norm 2"""
    assert scale_and_norm(make_standard("U(2)")) == (2, 4)
    assert scale_and_norm(make_standard("A1")) == (2, 2)


def test_is_primitive():
    """test primitivity by gcd"""
    assert is_primitive((1, 2, 0))
    assert not is_primitive((2, 4, 0))
    with pytest.raises(PreconditionError):
        is_primitive((0, 0))


def test_orthogonal_complement_in_unimodular():
    """test |det x^perp| = |x^2| for primitive x in T"""
    T = make_standard("T")
    x = (1, -1, 0, 0, 0, 0)
    assert norm(T, x) == -2
    C = orthogonal_complement(T, x)
    assert C.rank == 5
    assert abs(determinant(C)) == 2
    assert signature(C) == Signature(2, 3)


def test_short_vectors_of_a2():
    """test A2 has 6 roots"""
    L = rescale(make_standard("A2"), -1)
    roots = [v for v in short_vectors(L, 2) if norm(L, v) == 2]
    assert len(roots) == 6


def test_definite_isometry():
    """test isometry oracle on small definite lattices"""
    A2 = make_standard("A2")
    other = from_gram([[-2, -1], [-1, -2]])
    assert is_isometric_definite(A2, other)
    assert not is_isometric_definite(make_standard("A1^2"), A2)


def test_short_vectors_keep_vectors_on_the_bound():
    """test vectors with norm exactly equal to the bound are enumerated"""
    L = from_gram([[4, 1, -2], [1, 1, -1], [-2, -1, 4]])
    found = set(short_vectors(L, 4))
    assert (0, 0, 1) in found
    assert all(0 < norm(L, v) <= 4 for v in found)
    in_box = {v for v in vectors_in_box(3, 3) if 0 < norm(L, v) <= 4}
    assert in_box <= found
    assert is_isometric_definite(L, L)


def _random_definite_gram(rng, n):
    while True:
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = rng.randint(2, 4)
            for j in range(i + 1, n):
                gram[i][j] = gram[j][i] = rng.randint(-2, 2)
        try:
            L = from_gram(gram)
        except PreconditionError:
            continue
        if signature(L) == Signature(n, 0):
            return L


def _signed_permutation(L, perm, signs):
    n = L.rank
    return tuple(tuple(signs[i] * signs[j] * L.gram[perm[i]][perm[j]] for j in range(n)) for i in range(n))


def _isometric_by_signed_permutation(L1, L2):
    n = L1.rank
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            if _signed_permutation(L1, perm, signs) == L2.gram:
                return True
    return False


def test_definite_isometry_matches_permutation_search(rng):
    """test the oracle agrees with exhaustive signed permutation search on random lattices"""
    for _ in range(40):
        n = rng.randint(1, 4)
        L1 = _random_definite_gram(rng, n)
        if rng.random() < 0.5:
            perm = list(range(n))
            rng.shuffle(perm)
            L2 = from_gram(_signed_permutation(L1, perm, [rng.choice((1, -1)) for _ in range(n)]))
        else:
            L2 = _random_definite_gram(rng, n)
        exhaustive = _isometric_by_signed_permutation(L1, L2)
        found = is_isometric_definite(L1, L2)
        if exhaustive:
            assert found
        if found:
            assert determinant(L1) == determinant(L2)
            assert sorted(norm(L1, v) for v in short_vectors(L1, 6)) == sorted(norm(L2, v) for v in short_vectors(L2, 6))


def test_definite_isometry_under_base_change(rng):
    """test a random unimodular base change gives an isometric lattice"""
    for _ in range(20):
        n = rng.randint(2, 4)
        L = _random_definite_gram(rng, n)
        i, j = rng.sample(range(n), 2)
        k = rng.choice((-1, 1))
        basis = [[int(r == c) for c in range(n)] for r in range(n)]
        basis[i][j] = k
        moved = from_gram([[pair(L, basis[r], basis[c]) for c in range(n)] for r in range(n)])
        assert is_isometric_definite(L, moved)


def test_definite_isometry_rejects_indefinite():
    """test indefinite input => PreconditionError"""
    with pytest.raises(PreconditionError):
        is_isometric_definite(make_standard("U"), make_standard("U"))
