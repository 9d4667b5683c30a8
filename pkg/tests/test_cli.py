import json
import subprocess
import sys

import pytest

from planewidth.cli import Report, load_graph, main
from planewidth.graph import complete, moser_spindle
from planewidth.io import read_graph, read_representation, witness_from_json
from planewidth.geometry import eval_ratios


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, header",
    [(["complete", "5"], "5 10"), (["cubictree", "3"], "22 21"), (["moser"], "7 11"), (["grid", "2", "3"], "6 7")],
)
def test_gen_headers(capsys, argv, header):
    code, out, _ = run(capsys, "gen", *argv)
    assert code == 0 and out.splitlines()[0] == header


def test_gen_dimacs_to_file(tmp_path, capsys):
    path = tmp_path / "m.col"
    assert run(capsys, "gen", "moser", "--format", "dimacs", "--out", str(path))[0] == 0
    assert read_graph(path) == moser_spindle()


def test_shorthands_and_files(tmp_path):
    assert load_graph("K4") == complete(4)
    assert load_graph("grid3x4").n == 12
    p = tmp_path / "g.txt"
    p.write_text("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    assert load_graph(str(p)) == complete(4)


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "nosuch", "3"],
        ["gen", "complete"],
        ["gen", "cycle", "2"],
        ["construct", "4"],
        ["optimize", "K4", "--target", "re", "--starts", "0"],
        ["optimize", "K4", "--target", "xx"],
        ["invariants", "Q9"],
        ["verify", "nosuch"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_file_is_a_usage_error(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("3 2\n0 1\n")
    code, _, err = run(capsys, "invariants", str(p))
    assert code == 2 and "line" in err


def test_invariants_report(capsys):
    code, out, _ = run(capsys, "invariants", "C5")
    assert code == 0
    rep = Report.from_json(out)
    assert rep.exact_1d["chi_c"] == "5/2" and rep.exact_1d["dc1"] == "3/2"
    assert rep.exact_1d["bandwidth"] == 2
    assert Report.from_json(rep.to_json()) == rep


def test_invariants_with_bounds(capsys, tmp_path):
    code, out, _ = run(capsys, "invariants", "K4", "--optimize", "--starts", "4", "--iters", "300", "--out", str(tmp_path))
    assert code == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["bounds_2d"]["pw"]["upper_bound"] == pytest.approx(2 ** 0.5, abs=1e-3)
    assert rep["bounds_2d"]["re_lower_bound"] > 0


def test_optimize_writes_artifacts_deterministically(capsys, tmp_path):
    argv = ["optimize", "W4", "--target", "re", "--starts", "6", "--iters", "400", "--seed", "3"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, *argv, "--out", str(a))[0] == 0
    assert run(capsys, *argv, "--out", str(b))[0] == 0
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()
    assert (a / "witness_re.svg").read_text().startswith("<svg")
    rep = read_representation(a / "witness_re.txt")
    bound = Report.from_json((a / "report.json").read_text()).bounds_2d["re"]["upper_bound"]
    assert eval_ratios(load_graph("W4"), rep).re_ratio == pytest.approx(bound, rel=1e-12)


def test_construct_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "5", "--out", str(tmp_path))
    assert code == 0 and "K5 witness OK" in out
    host = read_graph(tmp_path / "graph.txt")
    rep = read_representation(tmp_path / "representation.txt", n=host.n)
    r = eval_ratios(host, rep)
    assert r.min_pair >= 1 and r.max_edge <= 2 ** 0.5 + 1e-12
    w = witness_from_json((tmp_path / "witness.json").read_text())
    assert len(w.branch_sets) == 5
    assert (tmp_path / "transcript.txt").read_text() == out


def test_verify_identities(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "identities", "--out", str(tmp_path))
    assert code == 0
    last = out.strip().splitlines()[-1]
    passed, total = last.split()[0].split("/")
    assert passed == total
    assert Report.from_json((tmp_path / "verify_identities.json").read_text()).ok


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "planewidth.cli", "gen", "cycle", "4"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.startswith("4 4")
