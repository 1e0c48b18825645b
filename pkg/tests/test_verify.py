import json
import math

import numpy as np
import pytest

from cauchydisk import fields as F
from cauchydisk import verify as V


def test_example1_fields():
    u, g, uz = V.example1_fields(0.5)
    z = (1 - 1e-9) * np.exp(1j * np.linspace(-3, 3, 9))
    assert np.max(np.abs(u(z))) < 1e-8
    assert uz(0.5) == pytest.approx(0.5 ** (-2 / 3) * (-1 / 12), abs=1e-15)
    assert g.label == "example1:alpha=0.5"
    with pytest.raises(F.FieldError):
        V.example1_fields(1 / 6)


def test_factor_four_convention():
    u, g, _ = V.example1_fields(0.5)
    for z in (0.1, 0.3j, -0.5 + 0.5j, 0.8):
        if abs(np.angle(z)) > 3:
            continue
        lap = V._fd_laplacian(u, z)
        assert abs(lap / 4 - g(z) / 4) / abs(g(z) / 4) < 1e-3


def test_scalar_lemma():
    assert V.scalar_lemma(0.5) == pytest.approx(0.75 * (4 * math.log(2) - 1), rel=1e-14)
    t = (np.arange(10_000) + 0.5) / 10_000
    assert np.max(V.scalar_lemma(t)) < 2


@pytest.mark.parametrize("suite", ["ex1", "ex2", "constants"])
def test_fast_suites_pass_and_repeat(suite):
    a = V.run_suite(suite, seed=7)
    assert a.passed, [c for c in a.checks if not c.passed]
    assert a.to_json() == V.run_suite(suite, seed=7).to_json()
    doc = json.loads(a.to_json())
    assert doc["suite_id"] == suite and doc["seed"] == 7
    assert all({"measured", "target", "tolerance", "status"} <= set(c) for c in doc["checks"])


def test_ex2_lipschitz_growth_measured():
    res = V.ex2_suite()
    c = {k.check_id: k for k in res.checks}["c_lipschitz_failure"]
    slope, r2 = c.measured
    assert slope == pytest.approx(2.0, rel=1e-6) and r2 > 0.99


def test_thm1_small_family():
    res = V.thm1_suite(1.75, family_size=3)
    assert res.passed
    assert res.parameters["margin"] > 0


def test_preconditions():
    with pytest.raises(ValueError):
        V.thm1_suite(1.5)
    with pytest.raises(ValueError):
        V.thm2_suite(2.0)
    with pytest.raises(ValueError):
        V.run_suite("thm9")


def test_thm2_branches():
    one = V.thm2_suite(1.75)
    assert one.parameters["mu"] == pytest.approx(1 / 7)
    assert one.passed
    two = V.thm2_suite(4.0)
    assert two.parameters["nu"] == pytest.approx(0.5)
    assert two.passed


def test_thm3_small_sample():
    res = V.thm3_suite(("one", "smooth:gauss"), samples=500, pool=40, seed=2)
    by_id = {c.check_id: c for c in res.checks}
    assert by_id["scalar_lemma"].passed
    assert by_id["ineq_one"].passed and by_id["ineq_smooth:gauss"].passed
    # |u_z| + |u_zbar| = 2|z| for g = 1, so the 2/3 gradient bound fails away from the origin
    assert not by_id["lambda_one"].passed
    assert by_id["lambda_quarter_one"].passed


def test_failed_check_is_recorded_not_raised():
    res = V.SuiteResult("ex1", 0)
    res.guard("boom", "raises", 0.0, 0.0, lambda: 1 / 0)
    assert not res.passed
    assert res.as_dict()["checks"][0]["measured"].startswith("error: ZeroDivisionError")


def test_nonfinite_serialised_as_string():
    res = V.SuiteResult("ex1", 0)
    res.add("x", "inf", True, math.inf, -math.inf, math.nan)
    d = res.as_dict()["checks"][0]
    assert d["measured"] == "inf" and d["target"] == "-inf" and d["tolerance"] == "nan"
