import json

import pytest

from conftest import DATA
from quasikit.cli import main
from quasikit.serialize import fixtures_dir

FX = fixtures_dir()


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_chi_of_triangle_sub(capsys, tmp_path):
    code, out, err = run(capsys, "compute", "chi", FX / "triangle-sub.json", "--out", tmp_path / "chi.json")
    assert code == 0 and "written" in out
    doc = json.loads((tmp_path / "chi.json").read_text())
    assert doc["$kind"] == "morphism"
    assert doc["components"]["E"] == {"ab": "[id_E,s,t]", "bc": "[s]", "ca": "[t]"}
    assert doc["components"]["V"] == {"a": "[id_V]", "b": "[id_V]", "c": "[]"}


def test_compute_to_stdout_keeps_summary_on_stderr(capsys):
    code, out, err = run(capsys, "compute", "exp", FX / "point-one.json", FX / "point-half.json", "--format", "json")
    assert code == 0
    art = json.loads(out)
    assert art["$kind"] == "construction" and art["op"] == "exp"
    summary = json.loads(err)
    assert list(summary["apex"]["membership"]["*"].values()) == ["1/2"]


@pytest.mark.parametrize(
    "op,files",
    [
        ("terminal", ["graph.json", "chain3.json"]),
        ("initial", ["graph.json", "chain3.json"]),
        ("product", ["triangle.json", "one-edge.json"]),
        ("coproduct", ["triangle.json", "path.json"]),
        ("pullback", ["edge-into-triangle.json", "edge-into-triangle.json"]),
        ("notnot", ["triangle-vertices.json"]),
        ("union", ["triangle-sub.json", "triangle-vertices.json"]),
        ("elements", ["one-edge.json"]),
    ],
)
def test_compute_ops_produce_valid_artifacts(capsys, tmp_path, op, files):
    out_file = tmp_path / f"{op}.json"
    code, _, _ = run(capsys, "compute", op, *[FX / f for f in files], "--out", out_file)
    assert code == 0
    # what we write must load back
    code, out, _ = run(capsys, "validate", out_file)
    assert code == 0 and out.startswith("OK")


def test_exit_codes(capsys, monkeypatch, tmp_path):
    assert run(capsys, "compute", "pullback", DATA / "crisp-id.json", DATA / "half-id.json")[0] == 1
    code, _, err = run(capsys, "compute", "chi", FX / "triangle-lowered.json")
    assert code == 1 and "NotRegular" in err
    assert run(capsys, "compute", "exp", FX / "triangle.json", FX / "triangle.json", "--max-enum", "10")[0] == 3
    monkeypatch.setenv("QUASIKIT_MAX_ENUM", "10")
    assert run(capsys, "compute", "exp", FX / "triangle.json", FX / "triangle.json")[0] == 3
    monkeypatch.delenv("QUASIKIT_MAX_ENUM")
    assert run(capsys, "compute", "chi")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "compute", "exp", FX / "triangle.json", FX / "nope.json")[0] == 1
    code, _, _ = run(capsys, "rewrite", DATA / "bad-bottom-rule.json", DATA / "bad-bottom-host.json", "--out", tmp_path)
    assert code == 1


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", FX)
    assert code == 0
    assert len(out.splitlines()) == len(list(FX.glob("*.json")))
    code, out, _ = run(capsys, "validate", DATA / "not-json.json", "--format", "json")
    doc = json.loads(out)
    assert code == 1 and doc["valid"] is False and doc["files"][0]["error"] == "ParseError"


def test_check_suites(capsys):
    code, out, _ = run(capsys, "check", "classifier")
    assert code == 0 and "[expected negative]" in out
    code, out, _ = run(capsys, "check", "adjunction", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["failed"] == 0
    assert all("=" in r["detail"] for r in doc["results"])


def test_demo_and_rewrite(capsys, tmp_path):
    code, out, _ = run(capsys, "demo", "--out", tmp_path / "d")
    assert code == 0 and "matches expected: True" in out
    names = {p.name for p in (tmp_path / "d").iterdir()}
    assert names == {
        "pre-state.json", "rule.json", "host.json", "expected-post.json",
        "post-state.json", "w.json", "g_R.json", "w-prime.json", "cube-report.json",
    }
    d = tmp_path / "d"
    code, _, _ = run(capsys, "rewrite", d / "rule.json", d / "host.json", "--out", tmp_path / "r")
    assert code == 0
    assert (tmp_path / "r" / "post-state.json").read_bytes() == (d / "expected-post.json").read_bytes()
    report = json.loads((tmp_path / "r" / "cube-report.json").read_text())
    assert report["$kind"] == "report"
    # brute force agrees with the fast checks on a small rule
    code, _, _ = run(capsys, "rewrite", FX / "identity-rule.json", FX / "identity-host.json", "--oracle", "both")
    assert code == 0
