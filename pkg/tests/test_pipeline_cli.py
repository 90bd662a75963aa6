import json
import subprocess
import sys

import pytest

from conftest import BROUGHTON, TWO_POINTS
from milnor_index.pipeline_cli import EXIT_BOUND, EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main


def test_round_fibres(capsys):
    assert main(["--poly", "x^2 + y^2", "--json", "-"]) == EXIT_OK
    d = json.loads(capsys.readouterr().out)
    assert d["index_winding"] == d["index_arcs"] == d["index_clusters"] == 1
    assert d["L_f"] == [] and d["atypical_at_infinity"] == []


@pytest.mark.parametrize("argv", [[], ["--poly", "x", "--file", "f.txt"], ["--poly", "x", "--center", "1"],
                                  ["--poly", "x", "--radius", "-2"], ["--fuzz", "3", "--degree", "1"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_parse_failure_exits_2(capsys):
    assert main(["--poly", "x^2 +* y"]) == EXIT_FAILURE
    assert "byte" in capsys.readouterr().err


def test_tiny_budget_exits_2_with_candidates(capsys):
    assert main(["--poly", TWO_POINTS, "--tracking-budget", "1"]) == EXIT_FAILURE
    err = capsys.readouterr().err
    assert "limit undecided" in err and "surviving candidates:" in err


def test_json_records_failure(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--poly", TWO_POINTS, "--tracking-budget", "1", "--json", str(out)]) == EXIT_FAILURE
    d = json.loads(out.read_text())
    assert d["error"]["stage"] == "infinity"
    assert d["error"]["surviving_candidates"] == ["0", "+inf"]


def test_bound_violation_exits_3(capsys):
    # a cusp-like branch at [1:0:0] pushes the refined bound below the index
    assert main(["--poly", "3*x*y^3 - 2*y^4 + y"]) == EXIT_BOUND


def test_json_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["--poly", BROUGHTON, "--json", str(p)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_file_batch_and_svg(tmp_path, capsys):
    src = tmp_path / "polys.txt"
    src.write_text("# examples\nx^2*y + x\nx*y\n")
    svg = tmp_path / "d.svg"
    assert main(["--file", str(src), "--svg", str(svg)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("[0] x^2*y + x: index 0") and lines[1].startswith("[1] x*y: index -1")
    assert b"<svg" in svg.read_bytes()


def test_center_override(capsys):
    assert main(["--poly", "x^2 + y^2", "--center", "1,0", "--json", "-"]) == EXIT_OK
    d = json.loads(capsys.readouterr().out)
    assert d["center"] == ["1", "0"] and len(d["arcs"]) == 2


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "milnor_index.pipeline_cli", "--poly", "x*y"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "index -1" in r.stdout


def test_small_fuzz_run(capsys):
    assert main(["--fuzz", "5", "--degree", "3", "--seed", "3"]) == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 5
