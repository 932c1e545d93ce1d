"""CLI behavior: output determinism, exit codes, and error shape."""

import json

import pytest

from dlscape.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_zoo_list(capsys):
    code, out, _ = run(capsys, "zoo", "list")
    assert code == 0
    cat = json.loads(out)
    assert "h_graph" in cat and "params" in cat["tree"]


def test_field_deterministic(capsys):
    args = ["field", "--space", "h_graph", "--radius", "48", "--r-max",
            "36", "--r-step", "6", "--zone", "8"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    rows = {r["vertex"]: r for r in data["values"]}
    assert rows["3,0"]["value"] == -3 and rows["3,0"]["stable"]


def test_field_csv(capsys):
    code, out, _ = run(capsys, "field", "--space", "line", "--radius",
                       "30", "--r-max", "20", "--zone", "6", "--csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "vertex,dist_from_base,value,stable,last_change"
    assert len(lines) == 14     # header + 13 zone vertices


def test_field_output_file(tmp_path, capsys):
    path = tmp_path / "f.json"
    code, out, _ = run(capsys, "field", "--space", "line", "--radius",
                       "30", "--r-max", "20", "--zone", "6",
                       "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["kind"] == "point_assigned"


def test_space_spec_file_and_shorthand(tmp_path, capsys):
    spec = {"generator": "tree", "params": {"b": 2},
            "scale": {"num": 1, "den": 1}}
    path = tmp_path / "space.json"
    path.write_text(json.dumps(spec))
    code1, out1, _ = run(capsys, "field", "--space", str(path), "--radius",
                         "12", "--r-max", "8", "--zone", "3")
    code2, out2, _ = run(capsys, "field", "--space", "tree:b=2", "--radius",
                         "12", "--r-max", "8", "--zone", "3")
    assert code1 == code2 == 0 and out1 == out2


def test_level_set(capsys):
    code, out, _ = run(capsys, "level-set", "--space", "h_graph",
                       "--radius", "48", "--r-max", "36", "--zone", "8",
                       "--level", "0")
    assert code == 0
    verts = json.loads(out)["vertices"]
    assert "2,2" in verts and "-3,3" in verts


def test_busemann_and_horo(capsys):
    code, out, _ = run(capsys, "busemann", "--space", "line", "--radius",
                       "40", "--ray-target", "30", "--zone", "8")
    assert code == 0 and json.loads(out)["kind"] == "busemann"
    code, out, _ = run(capsys, "horo", "--space", "line", "--radius", "40",
                       "--points", "10;20;30", "--zone", "8")
    assert code == 0 and json.loads(out)["kind"] == "horo"


def test_coray(capsys):
    code, out, _ = run(capsys, "coray", "--space", "h_graph", "--radius",
                       "48", "--r-max", "36", "--r-step", "6", "--zone",
                       "8", "--start", "2,2")
    assert code == 0
    data = json.loads(out)
    assert data["descending_neighbors"] == 1
    assert all(p["gradient_ok"] for p in data["paths"])


def test_rho(capsys):
    code, out, _ = run(capsys, "rho", "--space", "halfline", "--radius",
                       "40", "--r-max", "30", "--r-step", "5", "--zone",
                       "8", "--sample=0;2;5")
    assert code == 0
    data = json.loads(out)
    assert data["partition"]["blocks"] == [["0", "2", "5"]]
    assert data["axiom_violations"] == []


def test_gh_command(tmp_path, capsys):
    x = tmp_path / "x.json"
    y = tmp_path / "y.json"
    x.write_text(json.dumps({"n": 2, "base": 0,
                             "scale": {"num": 1, "den": 1},
                             "dist": [[0, 1], [1, 0]]}))
    y.write_text(json.dumps({"n": 2, "base": 0,
                             "scale": {"num": 1, "den": 1},
                             "dist": [[0, 2], [2, 0]]}))
    code, out, _ = run(capsys, "gh", "--x", str(x), "--y", str(y))
    assert code == 0
    data = json.loads(out)
    assert data["lower"] == "1/2" and data["upper"] == "1"


def test_experiment_pass_and_fail(capsys):
    base = ["experiment", "pa-gh", "--space-x", "pendant_line", "--space-y",
            "line", "--map", "nearest_spine", "--radius", "40", "--r-max",
            "32", "--r-step", "4", "--zone", "8", "--tail", "16"]
    code, out, _ = run(capsys, *base, "--eps", "1")
    assert code == 0 and json.loads(out)["abs_bound_8eps_ok"]
    # eps = 0 makes the 8*eps bound unattainable for the leaf vertices
    code, out, _ = run(capsys, *base, "--eps", "0")
    assert code == 1 and not json.loads(out)["abs_bound_8eps_ok"]


def test_check_suite(capsys):
    args = ["check", "--suite", "monotone", "--space", "h_graph",
            "--radius", "36", "--trials", "50", "--seed", "7"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0 and out1 == out2
    assert json.loads(out1)["ok"]


def test_usage_errors(capsys):
    # unknown generator
    code, _, err = run(capsys, "field", "--space", "moebius", "--radius",
                       "20", "--r-max", "10", "--zone", "4")
    assert code == 2 and "UnknownGeneratorError" in err
    # zone violation names the parameter to increase
    code, _, err = run(capsys, "field", "--space", "line", "--radius",
                       "10", "--r-max", "20", "--zone", "5")
    assert code == 2
    payload = json.loads(err)
    assert payload["error"] == "ZoneError"
    assert payload["parameter"] == "radius"
    # argparse-level misuse
    assert main(["bogus"]) == 2
    assert main(["rho", "--space", "line"]) == 2
    # missing file
    code, _, err = run(capsys, "gh", "--x", "/no/such.json", "--y",
                       "/no/such.json")
    assert code == 2
