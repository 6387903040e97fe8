"""tests for the registered degeneration scenarios"""

import pytest

from app.core.exceptions import InputError
from app.core.scenarios import builtin_scenarios, get_scenario, verify_scenario

SCENARIOS = [
    "generic-standard",
    "generic-alt",
    "d1-standard",
    "d1-alt",
    "d2-standard",
    "d2-alt",
    "d4-standard",
    "d4-alt",
    "d6-standard",
    "d6-alt",
]


def test_registry_contents():
    """test every scenario is registered"""
    assert sorted(builtin_scenarios()) == sorted(SCENARIOS)


@pytest.mark.parametrize("name", SCENARIOS)
def test_verify_scenario_passes(name):
    """test all checks pass for every registered scenario"""
    report = verify_scenario(name)
    failed = [c.id for c in report.checks if not c.passed]
    assert failed == []
    assert report.passed


def test_generic_report_data():
    """test the generic report carries discr NS = -64 and zero torsion heights"""
    report = verify_scenario("generic-standard")
    assert report.data["ns_discriminant"] == -64
    assert report.data["trivial_det"] == -1024
    assert set(report.data["heights"].values()) == {0}
    assert "transcendental" in [c.id for c in report.checks]


def test_degenerate_report_data():
    """test the delta 6 report keeps exact rationals"""
    report = verify_scenario("d6-standard")
    assert report.data["ns_discriminant"] == 96
    assert report.data["heights"]["D1"] == "3/2"
    assert "enhancement" in [c.id for c in report.checks]


@pytest.mark.parametrize("name,det", [("d1-alt", 64), ("d2-alt", 32), ("d4-alt", 64), ("d6-alt", 96)])
def test_degenerate_determinants(name, det):
    """test discr NS for each degeneration"""
    assert verify_scenario(name).data["ns_discriminant"] == det


def test_unknown_scenario():
    """test unknown names => InputError"""
    with pytest.raises(InputError):
        get_scenario("d3-standard")
    with pytest.raises(InputError):
        verify_scenario("nope")
