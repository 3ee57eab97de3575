"""
CLI and report tests: exit codes, byte-stable JSON, CSV tables and the
seed fallback from the environment
"""

import json

import pytest

import ces_cli
from backend.app.core import config as config_module
from backend.app.services.reporting.report_writer import build_report, dumps_report, to_csv


def run(tmp_path, *argv, name="report.json"):
    out = tmp_path / name
    code = ces_cli.main([*argv, "--out", str(out)])
    text = out.read_text(encoding="utf-8") if out.exists() else None
    return code, text


def test_dims_report(tmp_path):
    code, text = run(tmp_path, "dims", "--dims", "3,3", "--dims", "2,2,2")
    assert code == 0
    document = json.loads(text)
    assert list(document) == ["schema", "command", "config", "results", "timing"]
    assert document["schema"] == "ces-kit/1"
    assert document["timing"] is None
    first, second = document["results"]
    assert first["M"] == 4 and first["level_sizes"] == [1, 2, 3, 2, 1]
    assert first["closed_form_agrees"] and first["level_sets_agree"]
    assert second["level_sets_agree"]
    assert second["M"] == 4 and second["level_sizes"] == [1, 3, 3, 1]


@pytest.mark.parametrize("argv", [
    ["dims", "--dims", "2"],
    ["dims", "--dims", "1,3"],
    ["basis", "--dims", "2,2,2", "--pair", "1,1"],
    ["basis", "--dims", "2,2,2", "--pair", "1,x"],
    ["basis", "--dims", "2,2,2", "--pair", "1,5"],
    ["dims"],
])
def test_usage_errors_exit_two(tmp_path, argv):
    code, text = run(tmp_path, *argv)
    assert code == 2
    assert text is None


def test_basis_command(tmp_path):
    code, text = run(tmp_path, "basis", "--dims", "3,3", "--dims", "2,2,2", "--pair", "all")
    assert code == 0
    results = json.loads(text)["results"]
    assert results[0]["basis"]["count"] == 4
    assert results[0]["flip"]["antisymmetric"] <= 1e-12
    assert len(results) == 1 + 6
    assert all(entry["census"]["passed"] for entry in results[1:])


def test_basis_rotated_fill(tmp_path):
    code, text = run(tmp_path, "basis", "--dims", "2,3,4", "--rotate-fill", "--seed", "3")
    assert code == 0
    entry = json.loads(text)["results"][0]
    assert entry["validation"]["passed"]


def test_certify_all_levels(tmp_path):
    code, text = run(tmp_path, "certify", "--dims", "2,3,4", "--all-levels")
    assert code == 0
    results = json.loads(text)["results"]
    assert [entry["report"]["j"] for entry in results] == [1, 2, 3]
    assert all(entry["report"]["verdict"] == "NPT_j-certified" for entry in results)
    assert all(entry["report"]["witness"]["b"] == pytest.approx(-2 / 3, abs=1e-10) for entry in results)


def test_certify_degenerate_weight_file(tmp_path):
    weights = tmp_path / "weights.json"
    weights.write_text("[1, 0, 3, 0]")
    code, text = run(tmp_path, "certify", "--dims", "2,2,2", "--weights", str(weights))
    assert code == 0
    report = json.loads(text)["results"][0]["report"]
    assert report["witness"]["degenerate"]
    assert report["witness"]["j_double_prime"] == 3
    assert any("degenerate" in note for note in report["notes"])


def test_certify_weights_violating_hypothesis(tmp_path):
    weights = tmp_path / "weights.txt"
    weights.write_text("0 1 0 1")
    code, _ = run(tmp_path, "certify", "--dims", "2,2,2", "--weights", str(weights))
    assert code == 2


def test_certify_reflect(tmp_path):
    code, text = run(tmp_path, "certify", "--dims", "2,2,3", "--reflect", "--eigensolver", "numpy")
    assert code == 0
    states = [entry["state"] for entry in json.loads(text)["results"]]
    assert states == ["direct", "reflected"]


def test_upb_default_fixture(tmp_path):
    code, text = run(tmp_path, "upb", "--restarts", "10", "--seed", "0")
    assert code == 0
    report = json.loads(text)["results"][0]
    assert report["verdict"] == "bound-entangled (numerical certificate)"


def test_upb_bad_fixture(tmp_path):
    fixture = tmp_path / "bad.json"
    fixture.write_text(json.dumps({"dims": [2, 2], "vectors": [[[1, 0], [1, 0]], [[1, 0], [0.6, 0.8]]]}))
    code, _ = run(tmp_path, "upb", "--fixture", str(fixture))
    assert code == 2


def test_upb_search(tmp_path):
    code, text = run(tmp_path, "upb", "--search-F", "--dims", "2,2", "--restarts", "5", "--seed", "1")
    assert code == 0
    assert json.loads(text)["results"][0]["largest_orthogonal_size"] == 2


def test_seesaw_targets(tmp_path):
    code, text = run(tmp_path, "seesaw", "--dims", "2,2", "--target", "T", "--restarts", "5", "--seed", "4")
    assert code == 0
    assert json.loads(text)["results"][0]["result"]["value"] >= 1 - 1e-8
    code, text = run(tmp_path, "seesaw", "--dims", "2,2", "--restarts", "5", "--seed", "4")
    assert code == 0
    assert json.loads(text)["results"][0]["claim"] == "completely entangled (numerical certificate)"


def test_reports_are_byte_identical(tmp_path):
    argv = ["certify", "--dims", "2,3", "--weights", "random", "--seed", "11"]
    _, first = run(tmp_path, *argv)
    _, second = run(tmp_path, *argv)
    assert first == second


def test_timing_only_on_request(tmp_path):
    _, text = run(tmp_path, "dims", "--dims", "2,3", "--timing")
    assert json.loads(text)["timing"]["elapsed_seconds"] >= 0


def test_csv_output(tmp_path):
    code, text = run(tmp_path, "dims", "--dims", "2,3", "--format", "csv", name="levels.csv")
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "dims,n,size,sum_zero_dim"
    assert lines[1:] == ["2x3,0,1,0", "2x3,1,2,1", "2x3,2,2,1", "2x3,3,1,0"]


def test_seed_falls_back_to_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("CES_KIT_SEED", "123")
    monkeypatch.setattr(config_module, "_settings", None)
    code, text = run(tmp_path, "survey", "--dims", "2,2", "--samples", "2", "--eigensolver", "numpy")
    assert code == 0
    document = json.loads(text)
    assert document["config"]["seed"] == 123
    assert document["results"][0]["seed"] == 123


def test_float_encoding():
    text = dumps_report(build_report("ces-kit/1", "dims", {}, [{"x": 0.1, "y": 0.5, "z": 3}]))
    assert '"x": 0.10000000000000001' in text
    assert '"y": 0.5' in text
    assert '"z": 3' in text


def test_csv_float_format():
    assert to_csv([{"v": 0.1}]).splitlines() == ["v", "0.10000000000000001"]
