from doublegon.field import make_ext, make_field
from doublegon.flow import central_points, trace_ray
from doublegon.model import build_double_heptagon, staircase_model
from doublegon.plotting import plot_staircase, plot_survey, plot_trace
from doublegon.survey import SurveyConfig, run_survey


def _nonempty(p):
    return p.exists() and p.stat().st_size > 1000


def test_plot_staircase(tmp_path):
    assert _nonempty(plot_staircase(staircase_model(7), tmp_path / "s.svg"))
    assert _nonempty(plot_staircase(staircase_model(5), tmp_path / "sub" / "s.png"))


def test_plot_trace(tmp_path):
    K = make_field(7)
    surf = build_double_heptagon(make_ext(K))
    c1 = central_points(surf)[0]
    out = trace_ray(surf, c1, surf.polygons[0][2])
    assert _nonempty(plot_trace(surf, out, tmp_path / "t.svg", title="to a vertex"))


def test_plot_survey(tmp_path):
    res = run_survey(SurveyConfig(5, 1))
    assert _nonempty(plot_survey(res, tmp_path / "v.svg"))
