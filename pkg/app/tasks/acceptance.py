import logging
import random
from fractions import Fraction
from typing import Callable, List

import sympy as sp

from app.core import clifford, orbits, unitary
from app.core.config import settings
from app.core.discriminant import discriminant_form, enhance, find_anti_isometry, genus_equal, isometry_orbits, nikulin_equivalent, nikulin_invariants
from app.core.fibration import delta1_alternatives, height, height_pairing, ns_discriminant
from app.core.lattice import Signature, determinant, is_primitive, lattice_invariants, make_standard, scale_and_norm, vectors_in_box
from app.core.scenarios import GENERIC_NS, GENERIC_T, builtin_scenarios, get_scenario, verify_scenario
from app.core.symbolic import verify_d1
from app.schemas import Report

logger = logging.getLogger(__name__)

DEGENERATE_DETERMINANTS = {"d1-alt": 64, "d2-alt": 32, "d4-alt": 64, "d6-alt": 96}


def generic_lattices() -> Report:
    report = Report(name="generic")
    disc = ns_discriminant(get_scenario("generic-standard"))
    report.add("ns_discriminant", disc == -64, f"discr NS = {disc}")

    ns, t = make_standard(GENERIC_NS), make_standard(GENERIC_T)
    inv = nikulin_invariants(ns)
    report.add("nikulin", (inv.signature, inv.length, inv.parity) == (Signature(1, 15), 6, False), str(inv.as_dict()))
    found = find_anti_isometry(discriminant_form(ns), discriminant_form(t))
    report.add("anti_isometry", found is not None, f"generator images {found.images if found else None}")
    report.add("transcendental", nikulin_equivalent(t, make_standard("T(2)")), f"{GENERIC_T} against T(2)")
    return report


def degenerations() -> Report:
    report = Report(name="degenerations")
    for name, expected in DEGENERATE_DETERMINANTS.items():
        c = get_scenario(name)
        disc = ns_discriminant(c)
        det = determinant(make_standard(c.expected_ns))
        report.add(f"{name}:determinant", abs(disc) == abs(det) == expected, f"|discr NS| = {abs(disc)}, |det {c.expected_ns}| = {abs(det)}")
    for name in builtin_scenarios():
        result = verify_scenario(name)
        failed = [check.id for check in result.checks if not check.passed]
        report.add(f"{name}:verify", result.passed, f"failed checks {failed}" if failed else "all checks pass")
    return report


def discriminant_orbits() -> Report:
    report = Report(name="orbits")
    sizes = sorted(len(orbit) for orbit in isometry_orbits(orbits.t2_form()))
    report.add("orbit_sizes", sizes == [1, 1, 12, 15, 15, 20], f"sizes {sizes}")
    fixed = orbits.t2_fixed_points()
    report.add("fixed_points", fixed == sorted([(0,) * 6, orbits.KAPPA]), f"fixed {fixed}")
    for row in orbits.orbit_table(16):
        rule = orbits.orbit_size_rule(row.delta, row.orbit_size)
        report.add(f"n_delta:{row.delta}", rule == row.n_delta, f"orbit of size {row.orbit_size} gives {rule}, n = {row.n_delta}")
    return report


def fixed_isometries() -> dict[str, list[list[int]]]:
    """integer isometries of T: phi of the SU(2,2) generators, tau and the exchange maps"""
    maps = {f"phi(g{i})": unitary.phi(A) for i, A in enumerate(unitary.su22_generators())}
    maps.update({"tau": unitary.tau_tilde(), "c": unitary.EXCHANGE_C, "a": unitary.EXCHANGE_A})
    return {name: [[int(x) for x in g.row(i)] for i in range(6)] for name, g in maps.items()}


def _apply(g: list[list[int]], x: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(row[j] * x[j] for j in range(6)) for row in g)


def wall_classification() -> Report:
    report = Report(name="walls")
    isometries = fixed_isometries()
    unverified = [name for name, g in isometries.items() if not unitary.is_t_isometry(sp.Matrix(g))]
    report.add("isometries", not unverified, f"{len(isometries)} maps, not isometries of T: {unverified}")

    box = settings.SELFTEST_WALL_BOX
    checked, moved = 0, []
    for x in vectors_in_box(6, box):
        if not any(x) or not is_primitive(x) or orbits.t_norm(x) >= 0:
            continue
        checked += 1
        key = (orbits.t_norm(x), orbits.vector_type(x))
        for name, g in isometries.items():
            gx = _apply(g, x)
            if (orbits.t_norm(gx), orbits.vector_type(gx)) != key:
                moved.append((name, x))
    report.add("isometry_invariance", not moved, f"{checked} primitive vectors in [-{box},{box}]^6, changed {moved[:5]}")

    small = settings.SELFTEST_COMPLEMENT_BOX
    models: dict[tuple, tuple] = {}
    mismatches = []
    for x in vectors_in_box(6, small):
        if not any(x) or not is_primitive(x) or orbits.t_norm(x) >= 0:
            continue
        key = (orbits.t_norm(x), orbits.vector_type(x))
        if key not in models:
            models[key] = lattice_invariants(orbits.complement_in_T(orbits.canonical_rep(*key)))
        if lattice_invariants(orbits.complement_in_T(x)) != models[key]:
            mismatches.append(x)
    report.add("complement_invariants", not mismatches, f"box [-{small},{small}]^6 against {len(models)} representatives, mismatches {mismatches[:5]}")

    example = orbits.complement_matches((1, -2, 0, 0, 0, 0), "<4>+U+<-1>^2")
    report.add("complement_example", example, "(1,-2,0,0,0,0)^perp against <4>+U+<-1>^2")

    info1, info2 = orbits.example_warning_pair().values()
    distinct = info1["norm_in_T2"] == info2["norm_in_T2"] == -4 and orbits.t2_orbit_of(info1["f2"]) != orbits.t2_orbit_of(info2["f2"])
    report.add("example_warning", distinct, f"delta {info1['delta']} vs {info2['delta']}, orbit sizes {info1['orbit_size']} vs {info2['orbit_size']}")
    return report


def heights() -> Report:
    report = Report(name="heights")
    alternatives = delta1_alternatives()
    report.add("delta1_alternatives", bool(alternatives), f"{len(alternatives)} incidence patterns of height 1")

    d2 = get_scenario("d2-alt")
    h = height(d2, d2.section("D"))
    report.add("delta2_torsion", h == 0, f"h(D) = {h}")

    d6 = get_scenario("d6-standard")
    D1, D2, l5 = d6.section("D1"), d6.section("D2"), d6.section("l5")
    h1, h2 = height(d6, D1), height(d6, D2)
    report.add("delta6_heights", h1 == h2 == Fraction(3, 2), f"h(D1) = {h1}, h(D2) = {h2}")
    pairing = height_pairing(d6, D1, l5)
    report.add("delta6_pairing", pairing == 0 and D1.meets["l5"] == 1, f"<D1,l5> = {pairing} with D1.l5 = {D1.meets['l5']}")
    return report


def enhancements() -> Report:
    report = Report(name="enhancement")
    L, M = make_standard(GENERIC_NS), make_standard("T(2)")
    cases = (
        ((0, 0, 0, 0, 1, 1), "U(2)^2+<-4>", (2, 4)),
        ((1, -1, 0, 0, 0, 0), "U(2)+A1^2+<4>", (2, 2)),
    )
    for v, model, divisibility in cases:
        NS, T = enhance(L, M, v)
        expected = make_standard(model)
        report.add(f"{v}:det", abs(determinant(NS)) == 64, f"det NS = {determinant(NS)}")
        report.add(f"{v}:transcendental", genus_equal(T, expected), f"T against {model}")
        report.add(f"{v}:divisibility", scale_and_norm(T) == divisibility, f"(scale, norm) = {scale_and_norm(T)}")
    return report


def kuga_satake() -> Report:
    report = Report(name="kuga-satake")
    failures = []
    for delta in range(1, settings.SELFTEST_KS_DELTA_MAX + 1):
        try:
            clifford.kuga_satake_report(delta)
        except Exception as e:
            failures.append((delta, str(e)))
    report.add("clifford_class", not failures, f"delta <= {settings.SELFTEST_KS_DELTA_MAX}, failures {failures[:3]}")

    mismatches = [d for d in range(1, settings.SELFTEST_TWO_SQUARES_MAX + 1) if not (clifford.quat_is_split(clifford.QuaternionAlgebra(Fraction(-1), Fraction(d))) == clifford.sum_of_two_squares(d) == (clifford.two_squares(d) is not None))]
    report.add("minus_one_split", not mismatches, f"delta <= {settings.SELFTEST_TWO_SQUARES_MAX}, mismatches {mismatches[:5]}")
    return report


def group_isomorphism() -> Report:
    report = Report(name="group-iso")
    rng = random.Random(settings.K3LAT_SEED)
    samples = settings.SELFTEST_SU22_SAMPLES
    isometries = multiplicative = congruence = equivariant = 0
    for _ in range(samples):
        A, B = unitary.random_su22(rng), unitary.random_su22(rng)
        g = unitary.phi(A)
        isometries += unitary.is_t_isometry(g) and g.det() == 1
        multiplicative += unitary.matrices_equal(unitary.phi((A * B).applyfunc(sp.expand)), g * unitary.phi(B))
        congruence += unitary.congruent_mod_2(unitary.phi(unitary.random_su22(rng, congruence=True)))
        y = [rng.randint(-3, 3) for _ in range(6)]
        equivariant += unitary.pfaffian_equivariance(A, y)
    report.add("isometry", isometries == samples, f"{isometries}/{samples}")
    report.add("multiplicative", multiplicative == samples, f"{multiplicative}/{samples}")
    report.add("congruence", congruence == samples, f"{congruence}/{samples}")
    report.add("pfaffian_equivariance", equivariant == samples, f"{equivariant}/{samples}")

    squares = 0
    for _ in range(20):
        entries = [rng.randint(-5, 5) for _ in range(6)]
        N = sp.zeros(4)
        for (i, j), e in zip(((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)), entries):
            N[i, j], N[j, i] = e, -e
        squares += unitary.pfaffian(N) ** 2 == N.det()
    report.add("pfaffian_square", squares == 20, f"{squares}/20")
    return report


def rational_equivalence() -> Report:
    report = Report(name="rational")
    for delta in (1, 2, 4, 6, 8):
        x = orbits.canonical_rep(-2 * delta, orbits.VectorType.ORDINARY)
        same = orbits.rational_class_of_complement(x) == orbits.rational_model(delta)
        report.add(f"delta:{delta}", same, f"complement of {x}")
    return report


SUITES: List[Callable[[], Report]] = [
    generic_lattices,
    degenerations,
    discriminant_orbits,
    wall_classification,
    heights,
    enhancements,
    kuga_satake,
    group_isomorphism,
    verify_d1,
    rational_equivalence,
]


def run_all_acceptance_checks() -> List[Report]:
    reports = []
    for suite in SUITES:
        try:
            report = suite()
        except Exception as e:
            logger.error(f"Acceptance suite {suite.__name__} crashed: {e}")
            report = Report(name=suite.__name__).add("completed", False, str(e))
        logger.info(f"Acceptance suite {report.name}: {'pass' if report.passed else 'FAIL'}")
        reports.append(report)
    return reports
