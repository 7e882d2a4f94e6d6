import math

import pytest

from doublegon.field import make_field
from doublegon.reproduce import _printed_conjugate, caption_slope, reproduce_paper


@pytest.fixture(scope="module")
def report():
    return reproduce_paper()


def _check(report, name):
    return next(c for c in report.checks if c.name == name)


def test_internal_checks_pass(report):
    assert report.internal_ok
    for name in ("factorization", "matrix", "eigendirection"):
        assert _check(report, name).passed


def test_conjugate_trace_and_mismatch(report):
    c = _check(report, "conjugate")
    assert c.detail["computed_trace"] == "a^2 + 2"
    assert not c.passed and c.detail["max_abs_diff"] > 1
    assert c.detail["max_abs_diff_reading_alpha_as_a"] < 1e-9
    assert "alpha" in c.finding


def test_printed_trace_is_alpha_squared_plus_two():
    p = _printed_conjugate()
    al = math.cos(math.pi / 7)
    assert p[0] + p[3] == pytest.approx(al * al + 2)


def test_caption_slope_readings(report):
    lit = _check(report, "caption_slope")
    assert not lit.passed and lit.detail["classification"]["class"] == "parabolic"
    alt = _check(report, "caption_slope_alpha_as_a")
    assert alt.passed and alt.detail["is_eigendirection_of_M"]
    for probe in alt.detail["separatrix"].values():
        assert probe["exists"]


def test_caption_value():
    K = make_field(7)
    a = 2 * math.cos(math.pi / 7)
    assert float(caption_slope(K, alpha_as_a=True)) == pytest.approx(-2 / 3 * a * a + 2 * a - 4 / 3)
    assert float(caption_slope(K)) == pytest.approx(-2 / 3 * (a / 2) ** 2 + a - 4 / 3)


def test_report_rendering(report):
    js = report.to_json()
    assert js["internal_ok"] and len(js["findings"]) == 3
    text = "\n".join(report.lines())
    assert "[FINDING] conjugate" in text and "[ok] factorization" in text
