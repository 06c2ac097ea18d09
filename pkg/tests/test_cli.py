from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from arrmorse.cli import main

DATA = Path(__file__).resolve().parent.parent / "arrangements"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_faces_text(capsys):
    code, out, _ = run(capsys, "faces", "--input", str(DATA / "two_points.json"))
    assert code == 0 and out.splitlines()[0] == "5 facets (3,2)"
    _, out, _ = run(capsys, "faces", "--input", str(DATA / "a2.json"))
    assert out.splitlines()[0] == "13 facets (6,6,1)"
    _, out, _ = run(capsys, "faces", "--input", str(DATA / "empty.json"))
    assert out.splitlines()[0] == "1 facet (1)"


def test_order_json(capsys):
    code, out, _ = run(capsys, "order", "--input", str(DATA / "two_points.json"), "--format", "json")
    rep = json.loads(out)
    assert code == 0 and len(rep["order"]) == 5 and rep["attempts"] >= 1
    _, out, _ = run(capsys, "order", "--input", str(DATA / "a2.json"), "--format", "json")
    rep = json.loads(out)
    assert len(rep["order"]) == 13 and len(rep["roots"][2]) == 1


def test_morse_and_homology(capsys):
    _, out, _ = run(capsys, "morse", "--input", str(DATA / "a2.json"))
    assert "critical: (1,3,2)" in out and "acyclic: true" in out
    _, out, _ = run(capsys, "morse", "--input", str(DATA / "two_points.json"))
    assert "critical: (1,2)" in out
    _, out, _ = run(capsys, "homology", "--input", str(DATA / "a2.json"))
    assert "homology ranks: (1,3,2)" in out
    _, out, _ = run(capsys, "homology", "--input", str(DATA / "two_points.json"), "--spec", "t1=2,t2=3")
    assert "homology ranks: (0,1)" in out


def test_braid(capsys):
    _, out, _ = run(capsys, "braid", "--braid", "2", "--format", "json")
    assert json.loads(out)["pi"]["1"]["count"] == 3
    _, out, _ = run(capsys, "braid", "--braid", "3", "--dim", "2")
    assert "|pi_2| = 7" in out
    code, out, _ = run(capsys, "braid", "--braid", "1")
    assert code == 0 and "critical: (1,1)" in out


def test_dot_output(capsys):
    code, out, _ = run(capsys, "faces", "--input", str(DATA / "a2.json"), "--format", "dot")
    assert code == 0 and out.startswith("digraph")


@pytest.mark.parametrize("argv", [
    ["homology", "--input", str(DATA / "two_points.json"), "--spec", "t1=0"],
    ["faces", "--input", str(DATA / "line_in_plane.json")],
    ["faces", "--input", str(DATA / "missing.json")],
    ["order"],
    ["braid"],
])
def test_input_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("error:")


def test_essentialize_flag(capsys):
    code, out, _ = run(capsys, "faces", "--input", str(DATA / "line_in_plane.json"), "--essentialize")
    assert code == 0 and out.startswith("5 facets (3,2)")


def test_failed_check_exit_code(capsys, monkeypatch):
    from arrmorse import cli

    def broken(*args, **kwargs):
        raise AssertionError("d o d is not zero")

    monkeypatch.setattr(cli, "homology_report", broken)
    code, _, err = run(capsys, "homology", "--input", str(DATA / "a2.json"))
    assert code == 2 and "d o d" in err


def test_byte_identical_subprocess():
    cmd = [sys.executable, "-m", "arrmorse", "homology", "--input", str(DATA / "generic4.json"),
           "--seed", "3", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
