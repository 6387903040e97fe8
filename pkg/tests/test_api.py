"""tests for the HTTP endpoints"""

from app.core.config import settings

API = settings.API_V1_STR


# ============= LATTICES =============


def test_lattice_info(client):
    """test lattice info => rank, signature and determinant"""
    response = client.post(f"{API}/lattices/info", json={"label": "U(2)", "gram": [[0, 2], [2, 0]]})
    assert response.status_code == 200
    data = response.json()
    assert data["determinant"] == -4
    assert data["signature"] == [1, 1]
    assert data["even"] is True


def test_lattice_info_rejects_asymmetric(client):
    """test non-symmetric gram => 422"""
    response = client.post(f"{API}/lattices/info", json={"gram": [[0, 1], [2, 0]]})
    assert response.status_code == 422


def test_lattice_info_degenerate(client):
    """test degenerate gram => 409"""
    response = client.post(f"{API}/lattices/info", json={"gram": [[2, 2], [2, 2]]})
    assert response.status_code == 409
    assert "detail" in response.json()


def test_standard_lattice(client):
    """test the generic NS lattice by name"""
    response = client.get(f"{API}/lattices/standard/U+D6^2+A1^2")
    assert response.status_code == 200
    data = response.json()
    assert data["rank"] == 16
    assert data["determinant"] == -64
    assert data["invariant_factors"] == [2] * 6


def test_standard_lattice_unknown(client):
    """test unknown names => 422"""
    response = client.get(f"{API}/lattices/standard/F4")
    assert response.status_code == 422


def test_lattice_sum_and_scale(client):
    """test sum and rescaling endpoints"""
    a1 = {"label": "A1", "gram": [[-2]]}
    response = client.post(f"{API}/lattices/sum", json={"lattices": [a1, a1]})
    assert response.status_code == 200
    assert response.json()["label"] == "A1+A1"

    response = client.post(f"{API}/lattices/scale", json={"lattice": a1, "factor": 2})
    assert response.status_code == 200
    assert response.json()["gram"] == [[-4]]


# ============= DISCRIMINANTS =============


def test_discriminant_form(client):
    """test q_A1 = 3/2"""
    response = client.post(f"{API}/discriminants/form", json={"gram": [[-2]]})
    assert response.status_code == 200
    assert response.json()["q"] == ["3/2"]


def test_discriminant_form_odd(client):
    """test odd lattices => 409"""
    response = client.post(f"{API}/discriminants/form", json={"gram": [[1]]})
    assert response.status_code == 409


def test_discriminant_orbits(client):
    """test two orbits on the A1 form"""
    response = client.post(f"{API}/discriminants/orbits", json={"gram": [[-2]]})
    assert response.status_code == 200
    assert len(response.json()) == 2


# ============= ORBITS =============


def test_classify_e_basis(client):
    """test a norm -2 ordinary vector"""
    response = client.post(f"{API}/orbits/classify", json={"coords": [1, -1, 0, 0, 0, 0]})
    assert response.status_code == 200
    data = response.json()
    assert data["case"] == "ordinary"
    assert data["norm"] == -2
    assert data["delta"] == "1"


def test_classify_y_non_positive_delta(client):
    """test Delta = -4 => 200 with n_delta null"""
    response = client.post(f"{API}/orbits/classify", json={"coords": [1, 1, 0, 0, 0, 0], "basis": "y"})
    assert response.status_code == 200
    assert response.json()["n_delta"] is None


def test_classify_wrong_length(client):
    """test five coordinates => 422"""
    response = client.post(f"{API}/orbits/classify", json={"coords": [1, 0, 0, 0, 0]})
    assert response.status_code == 422


def test_orbit_table(client):
    """test the default table reaches 16"""
    response = client.get(f"{API}/orbits/table")
    assert response.status_code == 200
    rows = response.json()
    assert rows[-1]["delta"] == 16
    assert rows[-1]["n_delta"] == 15


# ============= SCENARIOS =============


def test_list_scenarios(client):
    """test all registered scenarios are listed"""
    response = client.get(f"{API}/scenarios/")
    assert response.status_code == 200
    assert len(response.json()) == 10


def test_get_scenario(client):
    """test a scenario summary"""
    response = client.get(f"{API}/scenarios/d2-alt")
    assert response.status_code == 200
    data = response.json()
    assert data["torsion_order"] == 2
    assert data["fibers"] == ["I2*", "I2*", "I2", "I2", "I2"]


def test_unknown_scenario(client):
    """test unknown scenario => 404"""
    response = client.get(f"{API}/scenarios/d3-standard")
    assert response.status_code == 404


def test_verify_scenario(client):
    """test the verify endpoint returns a passing report"""
    response = client.get(f"{API}/scenarios/d4-alt/verify")
    assert response.status_code == 200
    data = response.json()
    assert data["passed"] is True
    assert all(check["pass"] for check in data["checks"])


# ============= ALGEBRA =============


def test_phi_identity(client):
    """test phi of the identity"""
    one, zero = [1, 1, 0, 1], [0, 1, 0, 1]
    entries = [[one if i == j else zero for j in range(4)] for i in range(4)]
    response = client.post(f"{API}/unitary/phi", json={"entries": entries})
    assert response.status_code == 200
    assert response.json()["so_plus"] is True


def test_phi_bad_shape(client):
    """test a 3x3 matrix => 422"""
    response = client.post(f"{API}/unitary/phi", json={"entries": [[[1, 1, 0, 1]] * 3] * 3})
    assert response.status_code == 422


def test_pfaffian(client):
    """test Pf M(y) for y = (1,-1,0,0,0,0)"""
    response = client.post(f"{API}/unitary/pfaffian", json={"coords": [1, -1, 0, 0, 0, 0], "basis": "y"})
    assert response.status_code == 200
    assert response.json()["pfaffian"] == "-1"


def test_kuga_satake(client):
    """test Delta = 5 splits"""
    response = client.get(f"{API}/clifford/ks", params={"delta": 5})
    assert response.status_code == 200
    data = response.json()
    assert data["is_split"] is True
    assert data["ramification"] == []


def test_kuga_satake_rejects_zero(client):
    """test Delta = 0 => 422 from the query validation"""
    response = client.get(f"{API}/clifford/ks", params={"delta": 0})
    assert response.status_code == 422


def test_quaternion(client):
    """test (-1, 3) ramifies at 2 and 3"""
    response = client.get(f"{API}/clifford/quat", params={"a": "-1", "b": "3"})
    assert response.status_code == 200
    assert response.json()["ramification"] == ["2", "3"]


def test_quaternion_zero_entry(client):
    """test a zero entry => 409"""
    response = client.get(f"{API}/clifford/quat", params={"a": "0", "b": "3"})
    assert response.status_code == 409


def test_symbolic(client):
    """test the symbolic suite endpoint"""
    response = client.get(f"{API}/symbolic/verify-d1")
    assert response.status_code == 200
    assert response.json()["passed"] is True
