import json
import subprocess
import sys
from importlib import resources

import pytest

from torswide.cli import main, run


def call(capsys, *argv):
    status = run(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def golden(name):
    return resources.files("torswide").joinpath("data", "golden", name).read_text()


def test_tors_a2(capsys):
    status, out, _ = call(capsys, "tors", "--builtin", "a2")
    rows = [json.loads(line) for line in out.splitlines()]
    assert status == 0 and len(rows) == 5


def test_tors_methods_agree(capsys):
    _, walk, _ = call(capsys, "tors", "--builtin", "a3")
    _, scan, _ = call(capsys, "tors", "--builtin", "a3", "--method", "closure_scan")
    assert walk == scan and len(walk.splitlines()) == 14


def test_hasse_dot(capsys):
    status, out, _ = call(capsys, "hasse", "--builtin", "a2", "--format", "dot")
    assert status == 0 and out.startswith("digraph")
    assert out.count("->") == 5
    _, js, _ = call(capsys, "hasse", "--builtin", "a2", "--json")
    data = json.loads(js)
    assert len(data["nodes"]) == 5 and len(data["edges"]) == 5


def test_alpha_beta(capsys):
    status, out, _ = call(capsys, "alpha", "--builtin", "a2", "root[1,0],root[1,1]")
    assert status == 0 and json.loads(out)["alpha"] == ["root[1,1]"]
    status, out, _ = call(capsys, "beta", "--builtin", "a2", "root[0,1]")
    assert status == 0 and json.loads(out)["beta"] == ["root[0,1]"]


def test_wide_and_indecs(capsys):
    _, out, _ = call(capsys, "wide", "--builtin", "a3")
    assert len(out.splitlines()) == 14
    _, out, _ = call(capsys, "indecs", "--builtin", "d4")
    assert len(json.loads(out)["indecomposables"]) == 12


def test_verify_euler(capsys):
    status, out, _ = call(capsys, "verify", "euler", "--builtin", "a3")
    rep = json.loads(out)
    assert status == 0 and rep["status"] == "pass" and rep["checked"] >= 500


def test_kronecker_commands(capsys):
    status, out, _ = call(capsys, "kronecker", "catalog", "--json")
    assert status == 0 and len(json.loads(out)["pairs"]) == 72
    status, out, _ = call(capsys, "kronecker", "ringel", "--set", "0,2")
    rep = json.loads(out)
    assert status == 0 and rep["dim"] == [2, 3] and rep["end_dim"] == 1


def test_exit_invalid(capsys):
    assert call(capsys, "alpha", "--builtin", "a2", "root[1,1]")[0] == 2  # not a torsion class
    assert call(capsys, "tors", "--builtin", "a2", "--hom-budget", "0")[0] == 2
    assert call(capsys, "tors")[0] == 2
    assert call(capsys, "tors", "--quiver", "/nonexistent.json")[0] == 2
    assert call(capsys, "kronecker", "ringel", "--set", "1,1")[0] == 2


def test_exit_budget(capsys):
    status, _, err = call(capsys, "tors", "--builtin", "d4", "--method", "closure_scan", "--subset-budget", "100")
    assert status == 3 and "refused" in err


def test_exit_violation(capsys):
    status, out, err = call(capsys, "tube", "3", "6")
    assert status == 4 and out == ""
    cex = json.loads(err.split("\n", 1)[1])
    assert cex["first"]["reason"] == "no wing / wing+ray shape"
    assert call(capsys, "tube", "2", "4")[0] == 0


def test_env_vars(capsys, monkeypatch):
    monkeypatch.setenv("TORSWIDE_PRIME", "7")
    _, out, _ = call(capsys, "indecs", "--builtin", "a2")
    assert json.loads(out)["prime"] == 7
    _, out, _ = call(capsys, "indecs", "--builtin", "a2", "--prime", "3")
    assert json.loads(out)["prime"] == 3
    monkeypatch.setenv("TORSWIDE_SUBSET_BUDGET", "100")
    assert call(capsys, "tors", "--builtin", "d4", "--method", "closure_scan")[0] == 3
    monkeypatch.setenv("TORSWIDE_HOM_BUDGET", "many")
    assert call(capsys, "tors", "--builtin", "a2")[0] == 2


def test_cache_transparent(capsys, tmp_path, monkeypatch):
    cache = tmp_path / "cache.json"
    _, plain, _ = call(capsys, "tors", "--builtin", "d4")
    _, first, _ = call(capsys, "tors", "--builtin", "d4", "--cache", str(cache))
    assert cache.exists()
    _, second, _ = call(capsys, "tors", "--builtin", "d4", "--cache", str(cache))
    monkeypatch.setenv("TORSWIDE_CACHE", str(cache))
    _, third, _ = call(capsys, "tors", "--builtin", "d4")
    _, fourth, _ = call(capsys, "tors", "--builtin", "d4", "--no-cache")
    assert plain == first == second == third == fourth


@pytest.mark.parametrize("name", ["a2", "a3", "d4"])
def test_goldens(capsys, name):
    _, out, _ = call(capsys, "tors", "--builtin", name)
    assert out == golden(f"{name}_tors.ndjson")


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.ndjson"
    status, out, _ = call(capsys, "tors", "--builtin", "a2", "--output", str(target))
    assert status == 0 and out == "" and target.read_text() == golden("a2_tors.ndjson")


def test_main_exits(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["tors", "--builtin", "a2"])
    assert exc.value.code == 0


def test_subprocess_deterministic():
    cmd = [sys.executable, "-m", "torswide.cli", "hasse", "--builtin", "a3", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["edges"]
