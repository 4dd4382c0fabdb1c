"""End-to-end runs of the command line driver."""

import json
import shutil
import subprocess

import pytest

import tnnmorse
from tnnmorse import coxeter_system
from tnnmorse.cells import q_poset
from tnnmorse.cli import RunConfig, build_parser, config_from_args, main
from tnnmorse.export import qposet_from_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_config_round_trip():
    parser = build_parser()
    args = parser.parse_intermixed_args(
        ["A3", "--parabolic", "1,3", "enumerate", "--seed", "7"]
    )
    cfg = config_from_args(parser, args)
    assert cfg.system_label == "A3"
    assert cfg.parabolic == (1, 3)
    assert cfg.seed == 7
    assert RunConfig.from_json(cfg.to_json()) == cfg


def test_usage_errors_exit_2(capsys):
    for argv in (
        ["Z9", "enumerate"],
        ["A2"],
        ["enumerate"],
        ["A2", "enumerate", "label"],
        ["A2", "A3", "enumerate"],
        ["A2", "--parabolic", "1,x", "enumerate"],
        ["A2", "--parabolic", "7", "enumerate"],
        ["B2", "--cell", "nonsense", "match"],
        ["B2", "--cell", "5:e:e", "match"],
    ):
        code, _, _ = run_cli(capsys, *argv)
        assert code == 2, argv


def test_enumerate_grassmannian(capsys):
    code, out, _ = run_cli(capsys, "A3", "--parabolic", "1,3", "enumerate")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "tnn-morse/1"
    assert data["kind"] == "cells"
    assert data["counts"] == {"0": 6, "1": 12, "2": 10, "3": 4, "4": 1}


def test_enumerate_text(capsys):
    code, out, _ = run_cli(capsys, "A1", "enumerate", "--format", "text")
    assert code == 0
    assert "dim 0: 2 cells" in out
    assert "dim 1: 1 cells" in out
    assert "total 3 cells" in out

    code, out, _ = run_cli(
        capsys, "A2", "--parabolic", "1,2", "enumerate", "--format", "text"
    )
    assert code == 0
    assert "dim 0: 1 cells" in out
    assert "total 1 cells" in out


def test_enumerate_is_byte_deterministic(capsys):
    runs = {
        run_cli(capsys, "B2", "--parabolic", "1", "enumerate")[1]
        for _ in range(2)
    }
    assert len(runs) == 1


def test_label_command(capsys):
    code, out, _ = run_cli(capsys, "A2", "label")
    assert code == 0
    data = json.loads(out)
    assert data["el"] is True

    code, out, _ = run_cli(capsys, "G2", "label", "--format", "text")
    assert code == 0
    assert out.strip().endswith("el: pass")


def test_match_top_cell(capsys):
    code, out, _ = run_cli(capsys, "A2", "match")
    assert code == 0
    data = json.loads(out)
    assert data["acyclic"] is True
    assert data["critical_dims"] == [0]
    checked, good = data["goodness"]
    assert checked == good


def test_match_explicit_cell(capsys):
    code, out, _ = run_cli(
        capsys, "B2", "--parabolic", "1", "--cell", "1:e:1,2", "match"
    )
    assert code == 0
    data = json.loads(out)
    assert data["cell"] == "1:e:1,2"
    assert data["critical_dims"] == [0]


def test_verify_passes(capsys):
    for argv in (
        ["A2", "verify"],
        ["A2", "verify", "--all"],
        ["B2", "verify", "--all"],
    ):
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0, argv
        assert json.loads(out)["passed"] is True


def test_verify_text_format(capsys):
    code, out, _ = run_cli(capsys, "A2", "verify", "--format", "text")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1] == "all checks passed"


def test_verify_jobs_do_not_change_the_report(capsys):
    _, serial, _ = run_cli(capsys, "A2", "verify")
    _, threaded, _ = run_cli(capsys, "A2", "verify", "--jobs", "4")
    a, b = json.loads(serial), json.loads(threaded)
    a.pop("config"), b.pop("config")
    assert a == b


def test_fault_injection_exits_1(capsys):
    code, out, _ = run_cli(
        capsys, "A2", "verify", "--inject-fault", "cycle"
    )
    assert code == 1
    data = json.loads(out)
    assert data["passed"] is False
    assert any(c.get("witness") for c in data["checks"])

    code, _, _ = run_cli(
        capsys, "A2", "verify", "--inject-fault", "goodness"
    )
    assert code == 1


def test_export_writes_and_re_imports(capsys, tmp_path):
    out_dir = tmp_path / "artifacts"
    code, out, _ = run_cli(
        capsys, "A2", "export", "--out", str(out_dir)
    )
    assert code == 0
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == [
        "A2.hasse.dot", "A2.matching.dot",
        "A2.matching.json", "A2.qposet.json",
    ]
    data = json.loads((out_dir / "A2.qposet.json").read_text())
    back = qposet_from_json(data)
    Q = q_poset(coxeter_system("A2"), ())
    assert back.cells == Q.cells
    assert back.covers == Q.covers
    dot = (out_dir / "A2.hasse.dot").read_text()
    assert dot.startswith("digraph")


def test_export_is_byte_deterministic(capsys, tmp_path):
    blobs = []
    for sub in ("one", "two"):
        d = tmp_path / sub
        run_cli(capsys, "B2", "--parabolic", "1", "export", "--out", str(d))
        blobs.append({
            p.name: p.read_bytes() for p in d.iterdir()
        })
    assert blobs[0] == blobs[1]


def test_export_io_error_exits_3(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, _ = run_cli(
        capsys, "A2", "export", "--out", str(blocker / "sub")
    )
    assert code == 3


def test_console_script_is_installed():
    exe = shutil.which("tnnmorse")
    assert exe is not None
    proc = subprocess.run(
        [exe, "A1", "enumerate"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["counts"] == {"0": 2, "1": 1}


def test_public_api_resolves():
    missing = [n for n in tnnmorse.__all__ if not hasattr(tnnmorse, n)]
    assert missing == []
    assert tnnmorse.__version__
