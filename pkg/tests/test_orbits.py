"""tests for wall orbits, Delta-invariants and the F2 orbit table"""

import pytest

from app.core.exceptions import PreconditionError
from app.core.lattice import determinant, lattice_invariants, make_standard
from app.core.orbits import (
    KAPPA,
    VectorType,
    canonical_rep,
    classify_y,
    complement_in_T,
    complement_matches,
    delta_of_t,
    delta_of_y,
    embed_y,
    example_warning_pair,
    f2_image,
    n_delta,
    orbit_equivalent,
    orbit_size_rule,
    orbit_table,
    other_group_complement,
    primitive_y,
    q_t2,
    rational_class_of_complement,
    rational_model,
    t2_fixed_points,
    t2_orbit_of,
    t2_orbits,
    t_norm,
    t_to_y,
    vector_type,
)


def test_t_norm():
    """test the T form on a few vectors"""
    assert t_norm((1, -1, 0, 0, 0, 0)) == -2
    assert t_norm((0, 0, 0, 0, 1, 1)) == -2
    assert t_norm((1, 1, 1, 1, 0, 0)) == 4


def test_vector_type():
    """test characteristic vectors have even first block and odd last two"""
    assert vector_type((0, 0, 0, 0, 1, 1)) == VectorType.CHARACTERISTIC
    assert vector_type((2, 0, 0, 0, 1, 1)) == VectorType.CHARACTERISTIC
    assert vector_type((1, 0, 0, 0, 1, 1)) == VectorType.ORDINARY
    with pytest.raises(PreconditionError):
        vector_type((2, 0, 0, 0, 0, 0))


@pytest.mark.parametrize("norm,kind", [(-2, VectorType.CHARACTERISTIC), (-10, VectorType.CHARACTERISTIC), (-3, VectorType.ORDINARY), (-4, VectorType.ORDINARY), (-7, VectorType.ORDINARY)])
def test_canonical_rep_has_requested_invariants(norm, kind):
    """test canonical representatives realise (norm, type)"""
    rep = canonical_rep(norm, kind)
    assert t_norm(rep) == norm
    assert vector_type(rep) == kind


def test_canonical_rep_rejects_impossible():
    """test no characteristic vector of norm -4 and no nonnegative norms"""
    with pytest.raises(PreconditionError):
        canonical_rep(-4, VectorType.CHARACTERISTIC)
    with pytest.raises(PreconditionError):
        canonical_rep(0, VectorType.ORDINARY)


def test_orbit_equivalent():
    """test equal norm but different type are inequivalent"""
    assert orbit_equivalent((1, -1, 0, 0, 0, 0), (0, 0, 1, -1, 0, 0))
    assert not orbit_equivalent((1, -1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 1))


def test_delta_of_y():
    """test Delta = e^2 + f^2 - 4(ab + cd)"""
    assert delta_of_y((1, -1, 0, 0, 0, 0)) == 4
    assert delta_of_y((0, 0, 0, 0, 1, 0)) == 1
    assert delta_of_y((1, 0, 0, 0, 1, 1)) == 2
    with pytest.raises(PreconditionError):
        delta_of_y((2, 0, 0, 0, 0, 2))


def test_embedding_and_primitive_ray():
    """test embed_y, t_to_y and the primitive T-vector on the ray"""
    y = (1, 2, 0, -1, 1, 0)
    assert t_to_y(embed_y(y)) == y
    assert primitive_y(y) == embed_y(y)
    assert primitive_y((1, -1, 0, 0, 0, 0)) == (1, -1, 0, 0, 0, 0)
    assert delta_of_t(primitive_y((1, -1, 0, 0, 0, 0))) == 1


def test_classify_y():
    """test both parity cases"""
    ordinary = classify_y((1, -1, 0, 0, 0, 0))
    assert ordinary.case == VectorType.ORDINARY
    assert ordinary.delta == 4
    assert ordinary.representative == (1, -1, 0, 0, 0, 0)

    characteristic = classify_y((0, 0, 0, 0, 1, 0))
    assert characteristic.case == VectorType.CHARACTERISTIC
    assert characteristic.delta == 1
    assert characteristic.representative == (2, 0, 0, 0, 1, 1)


@pytest.mark.parametrize("delta,expected", [(1, 1), (2, 10), (4, 15), (5, 1), (6, 6), (8, 15), (9, 1), (10, 10), (14, 6), (16, 15)])
def test_n_delta(delta, expected):
    """test the number of components of the special divisor"""
    assert n_delta(delta) == expected


def test_n_delta_rejects_three_mod_four():
    """test Delta = 3 mod 4 and Delta <= 0 => PreconditionError"""
    with pytest.raises(PreconditionError):
        n_delta(3)
    with pytest.raises(PreconditionError):
        n_delta(0)


# ============= F2 ORBITS =============


def test_q_t2_values():
    """test the F2 quadratic form on T(2)"""
    assert q_t2((0, 0, 0, 0, 0, 0)) == 0
    assert q_t2(KAPPA) == 1
    assert q_t2((1, 1, 0, 0, 0, 0)) == 1


def test_t2_orbit_sizes():
    """test orbits of O(q) on the discriminant group of T(2)"""
    sizes = sorted(len(orbit) for orbit in t2_orbits())
    assert sizes == [1, 1, 12, 15, 15, 20]


def test_t2_fixed_points():
    """test the fixed points are 0 and kappa"""
    assert t2_fixed_points() == [(0, 0, 0, 0, 0, 0), KAPPA]


def test_orbit_table_to_eight():
    """test (Delta, n(Delta)) rows up to 8"""
    rows = orbit_table(8)
    assert [(row.delta, row.n_delta) for row in rows] == [(1, 1), (2, 10), (4, 15), (5, 1), (6, 6), (8, 15)]


def test_orbit_sizes_give_n_delta():
    """test the image in F2^6 lies in an orbit of size n(Delta), halved for Delta = 2 mod 4"""
    for row in orbit_table(16):
        assert orbit_size_rule(row.delta, row.orbit_size) == row.n_delta
        assert len(t2_orbit_of(row.f2_class)) == row.orbit_size


def test_orbit_size_rule_uses_the_orbit_size():
    """test a wrong orbit size for Delta = 1 mod 4 gives a count that disagrees with n(Delta)"""
    assert orbit_size_rule(5, 1) == n_delta(5)
    assert orbit_size_rule(5, 15) != n_delta(5)
    assert orbit_size_rule(6, 12) == n_delta(6)


def test_f2_image_of_characteristic():
    """test characteristic y-vectors map to kappa"""
    assert f2_image((0, 0, 0, 0, 1, 0)) == KAPPA


def test_example_warning_pair():
    """test two norm -4 vectors of T(2) with Delta 4 and 1 lie in different orbits"""
    pair = example_warning_pair()
    first, second = pair[(1, -1, 0, 0, 0, 0)], pair[(0, 0, 0, 0, 1, 0)]
    assert first["delta"] == 4
    assert second["delta"] == 1
    assert first["norm_in_T2"] == second["norm_in_T2"] == -4
    assert first["orbit_size"] == 15
    assert second["orbit_size"] == 1
    assert t2_orbit_of(first["f2"]) != t2_orbit_of(second["f2"])


# ============= COMPLEMENTS =============


def test_complement_in_T():
    """test x^perp has rank 5 and |det| = |x^2|"""
    C = complement_in_T((1, -2, 0, 0, 0, 0))
    assert C.rank == 5
    assert abs(determinant(C)) == 4
    assert lattice_invariants(C) == lattice_invariants(make_standard("<4>+U+<-1>^2"))
    assert complement_matches((1, -2, 0, 0, 0, 0), "<4>+U+<-1>^2")
    assert not complement_matches((1, -2, 0, 0, 0, 0), "<-4>+U+<1>^2")


def test_complement_requires_negative_norm():
    """test x^2 >= 0 => PreconditionError"""
    with pytest.raises(PreconditionError):
        complement_in_T((1, 1, 0, 0, 0, 0))


@pytest.mark.parametrize("u,v,d", [(1, 0, 2), (2, 1, 10)])
def test_other_group_complement(u, v, d):
    """test (0,0,0,0,u+v,u-v)^perp matches U + U + <-d>"""
    complement, model = other_group_complement(u, v)
    assert model.label == f"U^2+<{-d}>"
    assert lattice_invariants(complement) == lattice_invariants(model)


@pytest.mark.parametrize("delta", [1, 2, 4, 6, 8])
def test_rational_class_of_complement(delta):
    """test x^perp is rationally U + <-2>^2 + <2 Delta>"""
    x = canonical_rep(-2 * delta, VectorType.ORDINARY)
    assert rational_class_of_complement(x) == rational_model(delta)
