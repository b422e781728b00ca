import json

import pytest

from gbskit.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys, data, tmp_path):
    assert run(capsys, "validate", data / "bs24.json")[:2] == (0, "valid\n")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"format": "gogspec-v1", "vertices": [{"id": "a"}],
                               "edges": [{"id": "t", "from": "a", "to": "a", "from_exp": 0, "to_exp": 1}]}))
    code, out, _ = run(capsys, "validate", bad)
    assert code == 1 and "ZeroLabel" in out


def test_missing_file_is_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", tmp_path / "nope.json")
    assert code == 2 and "error" in err


def test_malformed_document(capsys, tmp_path):
    f = tmp_path / "x.json"
    f.write_text("{")
    assert run(capsys, "core", f)[0] == 1


def test_core_and_classify(capsys, data):
    code, out, _ = run(capsys, "core", data / "reduction.json")
    assert code == 0 and "k = 2" in out
    code, out, _ = run(capsys, "classify", data / "reduction.json")
    assert out.splitlines() == ["D1: GeneralGBS", "D2: GeneralGBS"]


def test_reduce_and_equal(capsys, data):
    code, out, _ = run(capsys, "reduce", data / "uv_gbs.json", "--word", "e1' v^9 e1")
    assert code == 0
    assert "canonical: u^24 e1' v e1" in out and "type: elliptic" in out.lower()
    code, out, _ = run(capsys, "equal", data / "bs24.json", "--left", "a^2 t", "--right", "t a^4")
    assert out.strip() == "true"
    code, _, err = run(capsys, "reduce", data / "bs24.json", "--word", "b^2")
    assert code == 1 and err


def test_centralizer(capsys, data):
    code, out, _ = run(capsys, "centralizer", data / "bs24.json", "--vertex", "a", "--power", 1)
    assert code == 0 and "Complete" in out and "presentation: < (a,1) >" in out
    code, out, _ = run(capsys, "centralizer", data / "bs24.json", "--vertex", "a", "--power", 2, "--max-vertices", 4)
    assert "Truncated (4 vertices" in out


def test_conjugate(capsys, data):
    code, out, _ = run(capsys, "conjugate", data / "bs24.json", "--pairs", "a,2,a,4", "a,1,a,2")
    assert out.splitlines() == ["a^2 ~ a^4: Yes  via t", "a^1 ~ a^2: No"]


def test_twist(capsys, data):
    code, out, _ = run(capsys, "twist", data / "uv_gbs.json", "--twist", "u=u^3", "--twist", "v=v^2",
                       "--check-fixes-centralizers", "--max-vertices", 16)
    assert code == 0
    assert "fixes C(u) on 10 samples: true" in out
    code, _, err = run(capsys, "twist", data / "bs24.json", "--twist", "a=t")
    assert code == 1 and "centralize" in err


def test_analyze_formats(capsys, data, tmp_path):
    dot = tmp_path / "core.dot"
    code, out, _ = run(capsys, "analyze", data / "reduction.json", "--format", "machine",
                       "--max-vertices", 16, "--dot", dot)
    assert code == 0 and json.loads(out)["k"] == 2
    assert dot.read_text().startswith('graph "core"')
    code, out, _ = run(capsys, "analyze", data / "bs24.json")
    assert "s = 1" in out


def test_bad_pairs_argument(data):
    with pytest.raises(SystemExit):
        main(["conjugate", str(data / "bs24.json"), "--pairs", "a,2,a"])
