"""tests for the command line front end and its exit codes"""

import json

from app.cli import run


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_unknown_command():
    """test argparse usage errors exit with 2"""
    assert run(["nope"]) == 2


def test_lattice_info_from_file(lattice_file, capsys):
    """test lattice info reads a JSON file"""
    path = lattice_file([[0, 2], [2, 0]], label="U(2)")
    assert run(["lattice", "info", path, "--json"]) == 0
    out = _json_out(capsys)
    assert out["determinant"] == -4
    assert out["signature"] == [1, 1]
    assert out["label"] == "U(2)"


def test_lattice_info_inline(capsys):
    """test inline JSON works too"""
    assert run(["lattice", "info", '{"gram": [[-2]]}', "--json"]) == 0
    assert _json_out(capsys)["invariant_factors"] == [2]


def test_lattice_sum_and_scale(lattice_file, capsys):
    """test direct sums and rescaling"""
    path = lattice_file([[-2]], label="A1")
    assert run(["lattice", "sum", path, path, "--json"]) == 0
    out = _json_out(capsys)
    assert out["rank"] == 2
    assert out["determinant"] == 4

    assert run(["lattice", "scale", path, "--factor", "3", "--json"]) == 0
    assert _json_out(capsys)["gram"] == [[-6]]


def test_malformed_json_exits_2(capsys):
    """test malformed JSON => exit 2 with the detail on stderr"""
    assert run(["lattice", "info", "{bad", "--json"]) == 2
    assert "detail" in json.loads(capsys.readouterr().err)


def test_missing_file_exits_2(tmp_path):
    """test unreadable files => exit 2"""
    assert run(["lattice", "info", str(tmp_path / "missing.json")]) == 2


def test_asymmetric_gram_exits_2():
    """test schema validation failures => exit 2"""
    assert run(["lattice", "info", '{"gram": [[0, 1], [2, 0]]}']) == 2


def test_precondition_exits_3(capsys):
    """test the discriminant form of an odd lattice => exit 3"""
    assert run(["disc", "form", '{"gram": [[1]]}']) == 3
    assert "error:" in capsys.readouterr().err


def test_disc_form(capsys):
    """test q_A1 via the CLI"""
    assert run(["disc", "form", '{"label": "A1", "gram": [[-2]]}', "--json"]) == 0
    out = _json_out(capsys)
    assert out["orders"] == [2]
    assert out["q"] == ["3/2"]


def test_disc_orbits(capsys):
    """test orbits of O(q) on the A1 form"""
    assert run(["disc", "orbits", '{"gram": [[-2]]}', "--json"]) == 0
    assert sorted(row["size"] for row in _json_out(capsys)) == [1, 1]


# ============= ORBITS =============


def test_orbit_table(capsys):
    """test the orbit table up to 8"""
    assert run(["orbit", "table", "--delta-max", "8", "--json"]) == 0
    rows = _json_out(capsys)
    assert [(row["delta"], row["n_delta"]) for row in rows] == [(1, 1), (2, 10), (4, 15), (5, 1), (6, 6), (8, 15)]


def test_orbit_table_text(capsys):
    """test the plain table has a header"""
    assert run(["orbit", "table", "--delta-max", "4"]) == 0
    assert capsys.readouterr().out.splitlines()[0].split()[0] == "delta"


def test_orbit_classify_y(capsys):
    """test classification of a y-vector"""
    assert run(["orbit", "classify", "--coords", "1,-1,0,0,0,0", "--basis", "y", "--json"]) == 0
    out = _json_out(capsys)
    assert out["delta"] == "4"
    assert out["n_delta"] == 15


def test_orbit_classify_y_without_orbit_count(capsys):
    """test a y-vector with Delta <= 0 is classified and n_delta is left null"""
    assert run(["orbit", "classify", "--coords", "1,1,0,0,0,0", "--basis", "y", "--json"]) == 0
    out = _json_out(capsys)
    assert out["delta"] == "-4"
    assert out["n_delta"] is None


def test_orbit_classify_bad_coords():
    """test wrong coordinate count => exit 2"""
    assert run(["orbit", "classify", "--coords", "1,2,3"]) == 2


def test_orbit_table_rejects_zero():
    """test delta-max < 1 => exit 2"""
    assert run(["orbit", "table", "--delta-max", "0"]) == 2


# ============= SCENARIOS =============


def test_scenario_list(capsys):
    """test all scenarios are listed"""
    assert run(["scenario", "list", "--json"]) == 0
    assert len(_json_out(capsys)) == 10


def test_scenario_verify(capsys):
    """test a passing scenario exits 0"""
    assert run(["scenario", "verify", "generic-standard"]) == 0
    assert capsys.readouterr().out.startswith("generic-standard: PASS")


def test_scenario_verify_json(capsys):
    """test report JSON uses the "pass" key"""
    assert run(["scenario", "verify", "d1-alt", "--json"]) == 0
    out = _json_out(capsys)
    assert out["passed"] is True
    assert all(check["pass"] for check in out["checks"])
    assert out["data"]["ns_discriminant"] == 64


def test_unknown_scenario_exits_2():
    """test unknown names => exit 2"""
    assert run(["scenario", "verify", "d3-standard"]) == 2


# ============= ALGEBRA =============


def test_phi_identity(capsys):
    """test phi of the identity matrix"""
    one, zero = [1, 1, 0, 1], [0, 1, 0, 1]
    matrix = [[one if i == j else zero for j in range(4)] for i in range(4)]
    assert run(["phi", "--matrix", json.dumps(matrix), "--json"]) == 0
    out = _json_out(capsys)
    assert out["matrix"] == [[int(i == j) for j in range(6)] for i in range(6)]
    assert out["congruence"] is True
    assert out["so_plus"] is True


def test_phi_non_unitary_exits_3():
    """test matrices outside SU(2,2) => exit 3"""
    one, two, zero = [1, 1, 0, 1], [2, 1, 0, 1], [0, 1, 0, 1]
    matrix = [[(two if i == 0 else one) if i == j else zero for j in range(4)] for i in range(4)]
    assert run(["phi", "--matrix", json.dumps(matrix)]) == 3


def test_pfaffian(capsys):
    """test Pf M(y) and Delta for y = (1,-1,0,0,0,0)"""
    assert run(["pfaffian", "--y", "1,-1,0,0,0,0", "--json"]) == 0
    out = _json_out(capsys)
    assert out["pfaffian"] == "-1"
    assert out["delta"] == 4


def test_ks(capsys):
    """test Delta = 3 is not split and ramifies at 2 and 3"""
    assert run(["ks", "--delta", "3", "--json"]) == 0
    out = _json_out(capsys)
    assert out["is_split"] is False
    assert out["ramification"] == ["2", "3"]
    assert out["ks_dimension"] == 16


def test_ks_rejects_zero():
    """test Delta = 0 => exit 3"""
    assert run(["ks", "--delta", "0"]) == 3


def test_quat(capsys):
    """test (-1,-1) ramifies at infinity and 2"""
    assert run(["quat", "--a", "-1", "--b", "-1", "--json"]) == 0
    out = _json_out(capsys)
    assert out["ramification"] == ["inf", "2"]
    assert out["split"] is False


def test_quat_bad_rational():
    """test non-rational input => exit 2"""
    assert run(["quat", "--a", "x", "--b", "1"]) == 2


def test_symbolic_verify(capsys):
    """test the symbolic suite exits 0"""
    assert run(["symbolic", "verify-d1"]) == 0
    assert "symbolic-d1: PASS" in capsys.readouterr().out
