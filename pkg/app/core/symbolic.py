"""
exact polynomial identities behind the delta 1 family of six-line double planes

Lines are normalised to l1 = x, l2 = y, l3 = x + y + z, l4 = a1 x + a2 y + a3 z,
l5 = z, l6 = b1 x + b2 y + b3 z. Points of P^2 are coordinate tuples (x, y, z).
The conic through six nodes is stored as displayed in the affine chart z = 1
and homogenized before nodes on the line at infinity are substituted.
"""

import logging
from typing import Optional

import sympy as sp
from sympy import Matrix

from app.core.exceptions import InputError, K3LatError
from app.core.unitary import period_point, plucker_relation
from app.schemas import Report

logger = logging.getLogger(__name__)

x, y, z = sp.symbols("x y z")
a1, a2, a3, b1, b2, b3 = sp.symbols("a1 a2 a3 b1 b2 b3")
a, b, t = sp.symbols("a b t")

# l4 and l6 are tangent to the conic exactly when these factors are nonzero
A_FACTOR = a3 + (b - 1) * a1
B_FACTOR = a3 + (b - 1) * a2

CONIC_NODES = ((1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6))
# node set as printed alongside the displayed conic; only P12 and P46 lie on it
LISTED_CONIC_NODES = ((1, 2), (1, 5), (2, 5), (3, 4), (3, 6), (4, 6))


def _is_zero(expr) -> bool:
    return sp.cancel(sp.together(sp.expand(expr))) == 0


# ============= LINES AND NODES =============


def normalize_lines() -> dict[int, sp.Expr]:
    return {
        1: x,
        2: y,
        3: x + y + z,
        4: a1 * x + a2 * y + a3 * z,
        5: z,
        6: b1 * x + b2 * y + b3 * z,
    }


def line_coefficients(i: int, specialize: bool = False) -> Matrix:
    lines = normalize_lines()
    if i not in lines:
        raise InputError(f"Line index {i} is not in 1..6")
    form = lines[i]
    if specialize:
        form = form.subs(delta1_specialization())
    return Matrix([[sp.diff(form, v) for v in (x, y, z)]])


def node(i: int, j: int, specialize: bool = True) -> tuple:
    """intersection of l_i and l_j as the cross product of their coefficient vectors"""
    if i == j:
        raise InputError("A node needs two distinct lines")
    p = line_coefficients(i, specialize).cross(line_coefficients(j, specialize))
    return tuple(sp.cancel(sp.together(c)) for c in p)


# ============= DELTA 1 FAMILY =============


def delta1_specialization() -> dict:
    """b1, b2 and the section parameter a on the delta 1 locus; excluded where A_FACTOR or B_FACTOR vanishes"""
    return {
        b1: b * a1 * b3 / A_FACTOR,
        b2: b * a2 * b3 / B_FACTOR,
        a: -b * a3 * b3 * (a1 - a2) ** 2 / (A_FACTOR * B_FACTOR),
    }


def excluded_locus() -> tuple:
    return A_FACTOR, B_FACTOR


def legendre_roots(u=t) -> tuple:
    """p and q with u w^2 = x (x - p) (x - q) after shifting the six-line cubic in the pencil parameter u"""
    p = (a1 * u + a2) * ((b1 - b3) * u + b2 - b3)
    q = (b1 * u + b2) * ((a1 - a3) * u + a2 - a3)
    return p, q


def verify_weierstrass_section(p=None, a_value=None, b_value=None) -> bool:
    """t (ab) g^2 = (at)(at - p)(at - q) with g = at - p and q = at - bg"""
    a_value = a if a_value is None else a_value
    b_value = b if b_value is None else b_value
    if p is None:
        p0, p1, p2 = sp.symbols("p0 p1 p2")
        p = p2 * t**2 + p1 * t + p0
    g = a_value * t - p
    q = a_value * t - b_value * g
    lhs = t * a_value * b_value * g**2
    rhs = (a_value * t) * (a_value * t - p) * (a_value * t - q)
    ok = sp.expand(lhs - rhs) == 0
    logger.debug(f"weierstrass section identity for p = {p}: {ok}")
    return ok


def verify_specialization() -> bool:
    """the roots of the six-line family satisfy at - q = b (at - p) once b1, b2, a are specialized"""
    p, q = legendre_roots()
    sub = delta1_specialization()
    g = (a * t - p).subs(sub)
    residue = (a * t - q).subs(sub) - b * g
    return _is_zero(residue)


# ============= CONICS =============


def displayed_conic() -> sp.Expr:
    """the conic through six nodes, term by term in the chart z = 1"""
    return (
        -(a1**2) * x**2 * a2
        + a1**2 * x**2 * a3
        + a1**2 * x**2 * b * a2
        - a1**2 * x * a2 * y
        + x * a1**2 * a2 * b
        + a1**2 * x * a2 * y * b
        - a1 * x * a2**2 * y
        + 2 * a3 * x * y * a1 * a2
        - x * a1**2 * a2
        + x * a3 * a1**2
        + a1 * x * a2**2 * y * b
        + a1 * a2**2 * y * b
        - a1 * a2**2 * y
        + a3 * y * a2**2
        - a2**2 * y**2 * a1
        + a2**2 * y**2 * a3
        + a2**2 * y**2 * b * a1
    )


def homogenized_conic() -> sp.Expr:
    return sp.Poly(sp.expand(displayed_conic()), x, y).homogenize(z).as_expr()


def _evaluate(expr, point) -> sp.Expr:
    return sp.cancel(sp.together(expr.subs(dict(zip((x, y, z), point)), simultaneous=True)))


def monomial_contributions(point) -> dict[str, sp.Expr]:
    """value of each monomial of the homogenized conic at a point, for localizing a failing term"""
    poly = sp.Poly(homogenized_conic(), x, y, z)
    result = {}
    for monom, coeff in poly.terms():
        term = coeff * x ** monom[0] * y ** monom[1] * z ** monom[2]
        result[str(term)] = _evaluate(term, point)
    return result


def conic_node_report(nodes=CONIC_NODES) -> dict[str, dict]:
    """residue of the conic at each node; nodes off the conic carry their nonzero monomials"""
    Q = homogenized_conic()
    report = {}
    for i, j in nodes:
        point = node(i, j)
        residue = _evaluate(Q, point)
        entry = {"on_conic": residue == 0, "residue": str(residue)}
        if residue != 0:
            entry["monomials"] = {term: str(value) for term, value in monomial_contributions(point).items() if value != 0}
        report[f"P{i}{j}"] = entry
    return report


def conic_residues(nodes=CONIC_NODES) -> dict[str, sp.Expr]:
    Q = homogenized_conic()
    return {f"P{i}{j}": _evaluate(Q, node(i, j)) for i, j in nodes}


def verify_conic_nodes(nodes=CONIC_NODES) -> bool:
    ok = True
    for name, entry in conic_node_report(nodes).items():
        if not entry["on_conic"]:
            ok = False
            logger.warning(f"conic does not pass through {name}: residue {entry['residue']}, monomials {entry['monomials']}")
    return ok


def tangent_conic() -> sp.Expr:
    alpha = a1 * (a2 - a3)
    beta = a2 * (a3 - a1)
    gamma = a3 * (a1 - a2)
    return alpha**2 * x**2 + beta**2 * y**2 + gamma**2 * z**2 - 2 * (alpha * beta * x * y + alpha * gamma * x * z + beta * gamma * y * z)


def restriction_discriminant(i: int) -> sp.Expr:
    """discriminant of the tangent conic restricted to l_i, parametrized by a basis of the line"""
    conic = tangent_conic()
    kernel = line_coefficients(i, specialize=(i == 6)).nullspace()
    if len(kernel) != 2:
        raise K3LatError(f"Line l{i} does not have a two-dimensional point space")
    s, r = sp.symbols("s r")
    point = s * kernel[0] + r * kernel[1]
    binary = sp.Poly(sp.expand(conic.subs({x: point[0], y: point[1], z: point[2]}, simultaneous=True)), s, r)
    qa, qb, qc = (binary.coeff_monomial(m) for m in (s**2, s * r, r**2))
    return sp.cancel(sp.together(qb**2 - 4 * qa * qc))


def verify_tangent_conic() -> bool:
    ok = True
    for i in normalize_lines():
        disc = restriction_discriminant(i)
        if disc != 0:
            ok = False
            logger.warning(f"tangent conic meets l{i} transversally: discriminant {disc}")
    return ok


# ============= PLUCKER QUADRIC =============


def symbolic_w() -> Matrix:
    u11, v11, u12, v12, u21, v21, u22, v22 = sp.symbols("u11 v11 u12 v12 u21 v21 u22 v22", real=True)
    return Matrix([[u11 + sp.I * v11, u12 + sp.I * v12], [u21 + sp.I * v21, u22 + sp.I * v22]])


def plucker_quadric_identity(W: Optional[Matrix] = None) -> bool:
    W = symbolic_w() if W is None else W
    return sp.expand(plucker_relation(period_point(W))) == 0


# ============= SUITE =============


def verify_d1() -> Report:
    report = Report(name="symbolic-d1")
    checks = (
        ("weierstrass_section", verify_weierstrass_section),
        ("specialization", verify_specialization),
        ("conic_nodes", verify_conic_nodes),
        ("tangent_conic", verify_tangent_conic),
        ("plucker_quadric", plucker_quadric_identity),
    )
    for check_id, check in checks:
        try:
            passed = check()
        except K3LatError as e:
            passed = False
            logger.warning(f"symbolic check {check_id} raised {e.detail}")
        report.add(check_id, passed, "identity holds" if passed else "nonzero residue")
    listed = conic_node_report(LISTED_CONIC_NODES)
    report.data = {
        "nodes": [f"P{i}{j}" for i, j in CONIC_NODES],
        "chart": "conic displayed at z = 1, homogenized for nodes at infinity",
        "listed_nodes": {name: entry["on_conic"] for name, entry in listed.items()},
        "listed_failures": {name: entry["monomials"] for name, entry in listed.items() if not entry["on_conic"]},
    }
    logger.info(f"Symbolic delta 1 suite: {'pass' if report.passed else 'FAIL'}")
    return report
