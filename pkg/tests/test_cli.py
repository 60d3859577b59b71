import json
import shutil
import subprocess

import pytest

from cellule.cli import main


def run(tmp_path, *argv):
    out = tmp_path / "r.json"
    code = main([*argv[:-1], argv[-1]] + ["--json", str(out)]) if argv else None
    return code, json.loads(out.read_text())


def test_mult_example(tmp_path):
    code, rep = run(tmp_path, "--type", "A~1", "--weights", "s1=2,s2=1", "mult", "s1", "s1")
    assert code == 0
    (res,) = rep["results"]
    terms = {t["z"]["word"]: t["f"]["str"] for t in res["terms"]}
    assert terms == {"e": "1", "s1": "v^2 - v^-2"}
    assert res["c_xy"] == 2 and res["ok"]
    assert res["terms"][1]["f"]["exp"] == {"2": 1, "-2": -1}
    assert res["terms"][1]["z"]["key"] == [-1]


def test_mult_trivial(tmp_path):
    _, rep = run(tmp_path, "--type", "A~1", "--weights", "2,1", "mult", "", "s1")
    (res,) = rep["results"]
    assert [(t["z"]["word"], t["f"]["str"]) for t in res["terms"]] == [("s1", "1")]
    assert res["c_xy"] == 0


def test_klpoly(tmp_path):
    _, rep = run(tmp_path, "--type", "A~1", "--weights", "s1=2,s2=1", "klpoly", "", "s1")
    assert rep["results"][0]["P"]["str"] == "v^-2"


def test_c0_decompose(tmp_path):
    code, rep = run(tmp_path, "--type", "A~1", "--weights", "2,1", "c0", "--decompose", "--max-length", "10")
    assert code == 0
    assert [(b["lambda"], b["z"]["word"]) for b in rep["results"]] == [("(0)", "e"), ("(0)", "s2")]
    sizes = [len(b["elements"]) for b in rep["results"]]
    assert sum(sizes) == 21 - 2


def test_verify_bound_and_count(tmp_path):
    code, rep = run(tmp_path, "--type", "A~2", "verify", "bound", "--max-length", "8")
    assert code == 0 and rep["violations"] == []
    code, rep = run(tmp_path, "--type", "B~3", "verify", "count")
    assert code == 0 and rep["results"][0]["results"]["R_size"] == 2


def test_cells_report(tmp_path):
    code, rep = run(tmp_path, "--type", "A~1", "cells", "--max-length", "4")
    assert code == 0
    assert rep["results"][0]["elements"][0]["word"] == "e"
    assert rep["caveats"]


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["--type", "C~2", "--weights", "3,2,1", "verify", "main", "--max-length", "6"]
    assert main(args + ["--json", str(a)]) == 0
    assert main(args + ["--json", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_timing_is_opt_in(tmp_path):
    _, rep = run(tmp_path, "--type", "A~1", "klpoly", "s1", "s1")
    assert rep["timing"] == {}
    out = tmp_path / "t.json"
    main(["--type", "A~1", "klpoly", "s1", "s1", "--timing", "--json", str(out)])
    assert "seconds" in json.loads(out.read_text())["timing"]


@pytest.mark.parametrize(
    "argv",
    [
        ["--type", "G~2", "--weights", "2,2,1", "verify", "bound"],
        ["--type", "E~6", "verify", "bound"],
        ["--type", "A~1", "mult", "s1", "t7"],
        ["--type", "A~1", "mult", "s1"],
        ["--type", "A~1", "cells", "--max-length", "99"],
        ["--type", "B~3", "plot", "--out", "unused.svg"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_stabilization_failure_is_a_violation(monkeypatch, tmp_path):
    out = tmp_path / "r.json"
    code = main(["--type", "A~1", "--weights", "2,1", "verify", "count", "--max-length", "1", "--json", str(out)])
    rep = json.loads(out.read_text())
    assert code == 1 and rep["violations"] and rep["caveats"]


def test_plot(tmp_path, capsys):
    svg = tmp_path / "a.svg"
    assert main(["--type", "A~2", "plot", "--out", str(svg), "--window", "2"]) == 0
    assert svg.read_text().count("<polygon") == 24
    assert "wrote" in capsys.readouterr().out


def test_console_script(tmp_path):
    exe = shutil.which("cellule")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run([exe, "--type", "A~1", "--weights", "2,1", "mult", "s1", "s1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "v^2 - v^-2" in proc.stdout
