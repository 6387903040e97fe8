"""tests for the acceptance suites behind selftest"""

import pytest
from sympy import Matrix

from app.core.unitary import is_t_isometry
from app.tasks import acceptance
from app.tasks.acceptance import SUITES, run_all_acceptance_checks


@pytest.mark.parametrize("suite", SUITES, ids=lambda s: s.__name__)
def test_suite_passes(suite):
    """test every acceptance suite passes on its own"""
    report = suite()
    failed = [(c.id, c.detail) for c in report.checks if not c.passed]
    assert failed == []
    assert report.checks


def test_crashed_suite_is_reported(monkeypatch):
    """test an exception inside a suite becomes a failing report"""

    def broken():
        raise RuntimeError("boom")

    monkeypatch.setattr(acceptance, "SUITES", [broken])
    reports = run_all_acceptance_checks()
    assert len(reports) == 1
    assert reports[0].name == "broken"
    assert not reports[0].passed
    assert reports[0].checks[0].detail == "boom"


def test_wall_sweep_catches_a_non_isometry(monkeypatch):
    """test a map that changes norms fails both wall checks"""
    swap = [[int(j == {0: 4, 4: 0}.get(i, i)) for j in range(6)] for i in range(6)]
    real = acceptance.fixed_isometries()
    monkeypatch.setattr(acceptance, "fixed_isometries", lambda: {**real, "swap": swap})
    monkeypatch.setattr(acceptance.settings, "SELFTEST_WALL_BOX", 1)
    report = acceptance.wall_classification()
    failed = {c.id for c in report.checks if not c.passed}
    assert failed == {"isometries", "isometry_invariance"}


def test_fixed_isometries_preserve_t():
    """test every map used by the wall sweep is an isometry of T"""
    isometries = acceptance.fixed_isometries()
    assert {"tau", "c", "a"} <= set(isometries)
    assert all(is_t_isometry(Matrix(g)) for g in isometries.values())
