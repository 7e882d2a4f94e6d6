import json

import pytest

from doublegon.cli import OUTDIR_ENV, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field(capsys):
    code, out, _ = run(capsys, "field", "9")
    assert code == 0 and out.splitlines()[0] == "x^3 - 3x - 1"
    code, out, _ = run(capsys, "field", "7", "--json", "--digits", "30")
    data = json.loads(out)
    assert data["degree"] == 3 and data["embedding"].startswith("1.80193773580483825247220463901")


@pytest.mark.parametrize("N", ["4", "6", "3"])
def test_bad_N_is_usage_error(capsys, N):
    code, _, err = run(capsys, "field", N)
    assert code == 2 and "odd" in err


def test_argparse_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "7"])
    assert exc.value.code == 2


def test_model(capsys, tmp_path):
    code, out, _ = run(capsys, "model", "7", "--json", "--plot", str(tmp_path / "m.svg"))
    data = json.loads(out)
    assert code == 0 and all(data["invariants"].values())
    assert data["vertex_classes"] == [{"corners": 20, "angle_over_pi": "10"}]
    assert data["genus"] == 3
    assert (tmp_path / "m.svg").exists()


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "7", "1", "1")
    assert code == 0 and "parabolic" in out and "word [3]" in out
    code, out, _ = run(capsys, "classify", "7", "22*a^2 + 21*a - 14", "35*a^2 + 27*a - 19", "--json")
    data = json.loads(out)
    assert data["class"] == "hyperbolic"
    assert data["preperiod"] == [4, 4] and data["period"] == [5, 0]
    assert data["eigenvalue"] == "a^2 + a"
    code, out, _ = run(capsys, "classify", "11", "1", "a^2 - a + 1", "--max-steps", "3")
    assert code == 0


def test_classify_errors(capsys):
    code, _, err = run(capsys, "classify", "7", "a+", "1")
    assert code == 3 and "position 2" in err
    code, _, err = run(capsys, "classify", "7", "b", "1")
    assert code == 3
    code, _, _ = run(capsys, "classify", "7", "0", "0")
    assert code == 2


def test_stabilizer(capsys):
    code, out, _ = run(capsys, "stabilizer", "7", "5,0", "--json")
    data = json.loads(out)
    assert data["matrix"] == [["1", "a"], ["a", "a^2 + 1"]]
    assert data["trace"] == "a^2 + 2" and data["type"] == "hyperbolic"
    code, out, _ = run(capsys, "stabilizer", "7", "0")
    assert code == 0 and "parabolic" in out
    assert run(capsys, "stabilizer", "7", "5,9")[0] == 2
    assert run(capsys, "stabilizer", "7", "x")[0] == 3


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper", "--json")
    data = json.loads(out)
    assert code == 0 and data["internal_ok"]
    names = [c["name"] for c in data["checks"]]
    assert names[:4] == ["factorization", "matrix", "eigendirection", "conjugate"]


def test_central_point_segments(capsys, tmp_path):
    svg = tmp_path / "c.svg"
    code, out, _ = run(capsys, "central-point", "--strategy", "segments", "--depth", "1", "--json", "--svg", str(svg))
    data = json.loads(out)
    assert code == 0
    assert data["not_a_connection_point"] == ["c1", "c2"]
    for label in ("c1", "c2"):
        e = data["points"][label]
        assert e["status"] == "certified" and e["recheck"]
        assert e["report"]["classification"]["class"] == "hyperbolic"
        assert e["report"]["backward_trace"]["kind"] == "vertex"
        assert (tmp_path / f"c_{label}.svg").exists()


def test_central_point_exhausted(capsys):
    code, out, _ = run(capsys, "central-point", "--strategy", "segments", "--depth", "0", "--point", "c1")
    assert code == 1 and "exhausted" in out


def test_survey_files(capsys, tmp_path, monkeypatch):
    out = tmp_path / "s.csv"
    code, text, _ = run(capsys, "survey", "7", "--height", "1", "--out", str(out))
    assert code == 0 and "15 directions" in text and "0 unresolved" in text
    assert out.read_text().startswith("N,x,y,class")
    assert out.with_suffix(".svg").exists()
    monkeypatch.setenv(OUTDIR_ENV, str(tmp_path / "env"))
    code, _, _ = run(capsys, "survey", "5", "--height", "1", "--format", "json", "--no-plot")
    data = json.loads((tmp_path / "env" / "survey_N5_H1.json").read_text())
    assert code == 0 and data["stats"]["parabolic"] == data["stats"]["total"]


def test_survey_needs_output(capsys, monkeypatch):
    monkeypatch.delenv(OUTDIR_ENV, raising=False)
    code, _, err = run(capsys, "survey", "5", "--height", "1")
    assert code == 2 and OUTDIR_ENV in err
    monkeypatch.setenv(OUTDIR_ENV, "/tmp")
    assert run(capsys, "survey", "5", "--height", "0")[0] == 2
