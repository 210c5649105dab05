from __future__ import annotations

import json

import pytest

from specialforms import DistanceMatrix, SpecialForm, circulant_matrix
from specialforms.cli import main


def write_json(path, obj):
    path.write_text(json.dumps(obj) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def form_file(tmp_path):
    f = SpecialForm.from_terms(4, 2, [((3, 4), -1), ((1, 2), 1)])
    return write_json(tmp_path / "form.json", f.to_dict())


@pytest.fixture
def pentagon_file(tmp_path):
    return write_json(tmp_path / "pentagon.json", circulant_matrix(2, (1, 2)).to_dict())


def test_canon_command(form_file, capsys):
    assert main(["canon", form_file]) == 0
    first = capsys.readouterr().out
    out = json.loads(first)
    assert out["d"] == 4 and out["p"] == 2
    got = SpecialForm.from_dict(out)
    assert all(g == 1 for _, g in got.terms)
    # byte-identical on repeat runs
    assert main(["canon", form_file]) == 0
    assert capsys.readouterr().out == first


def test_canon_capacity(tmp_path, capsys):
    f = SpecialForm.from_terms(20, 2, [((1, 2), 1)])
    path = write_json(tmp_path / "big.json", f.to_dict())
    assert main(["canon", path]) == 3
    assert "error:" in capsys.readouterr().err


def test_bad_inputs_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert main(["canon", str(bad)]) == 2
    assert main(["canon", str(tmp_path / "missing.json")]) == 2
    nonsense = write_json(tmp_path / "nonsense.json", {"d": 3})
    assert main(["canon", nonsense]) == 2
    capsys.readouterr()


def test_graph_command(form_file, capsys):
    assert main(["graph", form_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"r": 2, "entries": [[0, 2], [2, 0]]}
    assert main(["graph", form_file, "--format", "dot"]) == 0
    dot = capsys.readouterr().out
    assert dot.startswith("graph distances {")
    assert "--" not in dot  # both terms are disjoint, so every edge sits at p


def test_realize_command(pentagon_file, capsys):
    assert main(["realize", pentagon_file, "--p", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["count"] == 1
    real = out["solutions"][0]["realization"]
    assert real["d"] == 5
    assert "forms" not in out["solutions"][0]

    assert main(["realize", pentagon_file, "--p", "2", "--all-signs"]) == 0
    out = json.loads(capsys.readouterr().out)
    forms = out["solutions"][0]["forms"]
    assert len(forms) == 2
    assert all(f["d"] == 5 and f["p"] == 2 for f in forms)

    assert main(["realize", pentagon_file, "--p", "2", "--d", "6"]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 0


def test_realize_invariance_filter(pentagon_file, capsys):
    rotation = "2,3,4,5,1"
    assert main(["realize", pentagon_file, "--p", "2",
                 "--invariant-under", rotation]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 1
    swap = "2,1,3,4,5"
    assert main(["realize", pentagon_file, "--p", "2",
                 "--invariant-under", swap]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 0
    assert main(["realize", pentagon_file, "--p", "2",
                 "--invariant-under", "1,1,2,3,4"]) == 2
    capsys.readouterr()


def test_realize_errors(tmp_path, pentagon_file, capsys):
    assert main(["realize", pentagon_file, "--p", "1"]) == 2  # distance 2 > p
    big = DistanceMatrix.from_rows(
        [[0 if i == j else 1 for j in range(9)] for i in range(9)]
    )
    path = write_json(tmp_path / "big.json", big.to_dict())
    assert main(["realize", path, "--p", "2"]) == 3
    capsys.readouterr()


def test_democratic_matrix_circulant(capsys):
    assert main(["democratic", "matrix", "--circulant", "5"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert DistanceMatrix.from_dict(out) == circulant_matrix(2, (1, 2))
    assert main(["democratic", "matrix", "--circulant", "5", "2,1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert DistanceMatrix.from_dict(out) == circulant_matrix(2, (2, 1))
    assert main(["democratic", "matrix", "--circulant", "4"]) == 2
    capsys.readouterr()


def test_democratic_matrix_even_and_product(capsys):
    assert main(["democratic", "matrix", "--even", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["entries"] == [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    assert main(["democratic", "matrix", "--product", "3,3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["r"] == 9
    assert main(["democratic", "matrix", "--product", "3,3", "1,1,2,2"]) == 0
    out = json.loads(capsys.readouterr().out)
    off_diag = {v for row in out["entries"] for v in row if v != 0}
    assert off_diag == {1, 2}
    capsys.readouterr()


def test_democratic_matrix_dot_output(tmp_path, capsys):
    target = tmp_path / "graph.dot"
    assert main(["democratic", "matrix", "--circulant", "5", "--format", "dot",
                 "--p", "2", "--dot", str(target)]) == 0
    dot = capsys.readouterr().out
    assert target.read_text(encoding="utf-8") == dot
    # only the five distance-1 edges survive the --p filter
    assert dot.count("--") == 5


def test_democratic_enum_and_count(capsys):
    assert main(["democratic", "enum", "12"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["count"] == 4
    assert out["families"] == [[3, 2, 2], [4, 3], [6, 2], [12]]
    assert main(["democratic", "count", "30"]) == 0
    assert json.loads(capsys.readouterr().out) == 5
    assert main(["democratic", "count", "1"]) == 2
    capsys.readouterr()


def test_democratic_classify(capsys):
    assert main(["democratic", "classify", "5", "--p", "2", "--max-distance", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["candidates"] == 12
    assert len(out["democratic"]) == 12
    assert out["theorem_verified"] is True
    assert main(["democratic", "classify", "5", "--p", "2", "--alphabet", "1,2"]) == 0
    assert json.loads(capsys.readouterr().out) == out
    assert main(["democratic", "classify", "9", "--p", "3", "--max-distance", "3"]) == 2
    assert main(["democratic", "classify", "11", "--p", "5", "--max-distance", "5"]) == 3
    capsys.readouterr()


def test_calibrate_command(tmp_path, capsys):
    f = SpecialForm.from_terms(3, 2, [((1, 2), 1)])
    path = write_json(tmp_path / "plane.json", f.to_dict())
    csv_path = tmp_path / "values.csv"
    assert main(["calibrate", path, "--restarts", "5", "--csv", str(csv_path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert abs(out["max_value"] - 1.0) <= 1e-6
    assert out["calibrated"] is True
    assert out["n_restarts"] == 5
    lines = csv_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "start,value"
    assert len(lines) == 1 + len(out["restart_values"])
    assert main(["calibrate", path, "--tol", "0.5"]) == 2
    capsys.readouterr()


def test_bell_command(capsys):
    assert main(["bell", "7"]) == 0
    assert json.loads(capsys.readouterr().out) == 877
    assert main(["bell", "-1"]) == 2
    capsys.readouterr()


def test_output_file(tmp_path, form_file):
    target = tmp_path / "out.json"
    assert main(["-o", str(target), "graph", form_file]) == 0
    out = json.loads(target.read_text(encoding="utf-8"))
    assert out["r"] == 2


def test_config_file(tmp_path, capsys):
    f = SpecialForm.from_terms(12, 2, [((1, 2), 1)])
    path = write_json(tmp_path / "wide.json", f.to_dict())
    assert main(["canon", path]) == 3  # default cap is 10
    cfg = tmp_path / "settings.cfg"
    cfg.write_text("# raise the cap\ncanon_d_cap = 12\n", encoding="utf-8")
    assert main(["--config", str(cfg), "canon", path]) == 0
    capsys.readouterr()

    bad = tmp_path / "bad.cfg"
    bad.write_text("no_such_setting = 1\n", encoding="utf-8")
    assert main(["--config", str(bad), "bell", "3"]) == 2
    worse = tmp_path / "worse.cfg"
    worse.write_text("canon_d_cap = ten\n", encoding="utf-8")
    assert main(["--config", str(worse), "bell", "3"]) == 2
    assert main(["--config", str(tmp_path / "absent.cfg"), "bell", "3"]) == 2
    capsys.readouterr()


def test_config_env_var_and_precedence(tmp_path, capsys, monkeypatch):
    f = SpecialForm.from_terms(3, 2, [((1, 2), 1)])
    path = write_json(tmp_path / "plane.json", f.to_dict())
    env_cfg = tmp_path / "env.cfg"
    env_cfg.write_text("comass_restarts = 3\n", encoding="utf-8")
    monkeypatch.setenv("SPECIALFORMS_CONFIG", str(env_cfg))
    assert main(["calibrate", path]) == 0
    assert json.loads(capsys.readouterr().out)["n_restarts"] == 3

    flag_cfg = tmp_path / "flag.cfg"
    flag_cfg.write_text("comass_restarts = 4\n", encoding="utf-8")
    assert main(["--config", str(flag_cfg), "calibrate", path]) == 0
    assert json.loads(capsys.readouterr().out)["n_restarts"] == 4

    # a command line flag outranks any configured value
    assert main(["--config", str(flag_cfg), "calibrate", path, "--restarts", "6"]) == 0
    assert json.loads(capsys.readouterr().out)["n_restarts"] == 6


def test_calibrate_deterministic_for_seed(tmp_path, capsys):
    f = SpecialForm.from_terms(3, 2, [((1, 2), 1), ((1, 3), 1)])
    path = write_json(tmp_path / "pair.json", f.to_dict())
    assert main(["--seed", "9", "calibrate", path, "--restarts", "8"]) == 0
    first = capsys.readouterr().out
    assert main(["--seed", "9", "calibrate", path, "--restarts", "8"]) == 0
    assert capsys.readouterr().out == first
