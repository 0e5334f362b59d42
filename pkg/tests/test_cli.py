import json
import subprocess
import sys

import pytest

from octaweier.cli import main
from octaweier.lattice_mesh import parse_obj


def test_build_mesh(tmp_path, capsysbinary):
    out = tmp_path / "m.obj"
    assert main(["build-mesh", "--cells", "2", "2", "2", "--out", str(out)]) == 0
    assert len(parse_obj(out.read_bytes())[1]) == 256
    assert main(["build-mesh"]) == 0
    assert len(parse_obj(capsysbinary.readouterr().out)[1]) == 32


@pytest.mark.parametrize("argv", [["build-mesh", "--cells", "0", "1", "1"],
                                  ["build-mesh", "--cells", "1", "1"],
                                  ["verify", "bogus"],
                                  ["render", "--flat", "3,1,1"],
                                  ["render", "--flat", "1,x,1"],
                                  ["render", "--disk", "40"],
                                  ["render"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_invalid_triple_lists_valid_ones(capsys):
    with pytest.raises(SystemExit):
        main(["render", "--flat", "3,1,1"])
    err = capsys.readouterr().err
    for k in ("1,1,5", "2,2,2", "5,1,1"):
        assert k in err


def test_verify_map(capsys):
    assert main(["verify", "map"]) == 0
    rows = capsys.readouterr().out.strip().splitlines()[1:]
    status = {r.split("\t")[1]: r.split("\t")[3] for r in rows}
    assert status["euler_genus"] == "pass" and status["embedding"] == "skip"


def test_fault_injection_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("OCTAWEIER_INJECT_FAULT", "sigma")
    assert main(["verify", "map", "--json"]) == 1
    captured = capsys.readouterr()
    rep = json.loads(captured.out)
    assert rep["checks"][0]["name"] == "euler_genus"
    assert rep["checks"][0]["status"] == "fail"
    assert "FAIL euler_genus" in captured.err


def test_hidden_fault_flag(capsys):
    assert main(["verify", "map", "--inject-fault", "sigma"]) == 1


def test_render_outputs(tmp_path):
    for argv, marker in ([["--disk", "3"], b"<svg"], [["--16gon", "--petrie"], b"petrie"],
                         [["--flat", "1,1,5"], b"cones_over_pi"]):
        out = tmp_path / "x.svg"
        assert main(["render", *argv, "--out", str(out)]) == 0
        assert marker in out.read_bytes()
    out = tmp_path / "c.json"
    assert main(["render", "--16gon", "--format", "json", "--out", str(out)]) == 0
    assert len(json.loads(out.read_text())["pairing"]) == 16


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "octaweier", "--version"], capture_output=True,
                         text=True)
    assert res.returncode == 0 and "octaweier" in res.stdout


def test_report_dir(tmp_path, capsys):
    assert main(["verify", "tiling", "mesh", "--report-dir", str(tmp_path)]) == 0
    names = {p.name for p in tmp_path.iterdir()}
    assert {"checks.tsv", "report.json", "tiling.png", "sixteen_gon.png", "mesh_patch.png"} <= names
