import json
import subprocess
import sys

import numpy as np
import pytest

from quasicompact import cli, harness


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_scheme_command(capsys):
    code, out, _ = run(capsys, "scheme", "--label", "4", "--alpha", "1.5")
    assert code == 0
    lines = out.splitlines()
    assert "c: (0, 1, 0)" in lines
    assert "d: (0, 0.25, 0.75)" in lines
    assert "order: 2" in lines
    e = [float(v) for v in lines[-1].split()[1:]]
    assert e[0] == 0.0 and e[1] == 0.0 and e[2] == pytest.approx(-0.15625)


def test_scheme_label_whitespace_is_ignored(capsys):
    _, a, _ = run(capsys, "scheme", "--label", "(4,5)", "--alpha", "1.3")
    _, b, _ = run(capsys, "scheme", "--label", " ( 4 , 5 ) ", "--alpha", "1.3")
    assert a == b and "order: 3" in a


def test_stability_command_flags_unstable_combination(capsys):
    code, out, _ = run(capsys, "stability", "--label", "(1,2)+(1,4)", "--alpha", "1.5",
                       "--n", "100")
    assert code == 0
    header, row = out.splitlines()
    assert header == "label,alpha,N,tau_over_halpha,f_max,rho,verdict"
    assert row.endswith(",unstable")


def test_stability_command_stable_scheme(capsys):
    code, out, _ = run(capsys, "stability", "--label", "1", "--alpha", "1.5", "--n", "50",
                       "--tau-rule", "h/20")
    assert code == 0 and out.splitlines()[1].endswith(",stable")


def test_converge_writes_report(tmp_path, capsys):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "converge", "--example", "4.2", "--label", "5", "--alpha", "1.5",
                       "--grids", "8,16,32,64,128", "--tau-rule", "h", "--out", str(target))
    assert code == 0 and out == ""
    rows = [l for l in target.read_text().splitlines() if not l.startswith("#")]
    assert rows[0] == "N,error,rate"
    assert [int(r.split(",")[0]) for r in rows[1:]] == [8, 16, 32, 64, 128]
    assert float(rows[-1].split(",")[2]) == pytest.approx(2.04, abs=0.15)


def test_converge_output_is_byte_identical(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert cli.main(["converge", "--example", "4.3", "--label", "4", "--alpha", "1.1",
                         "--beta", "1.9", "--grids", "4,8", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_converge_steady_and_corrected(capsys):
    code, out, _ = run(capsys, "converge", "--example", "A.29", "--label", "(1,3)",
                       "--alpha", "1.5", "--grids", "8,16", "--correction", "2")
    assert code == 0 and "# correction_order: 2" in out
    code, out, _ = run(capsys, "converge", "--example", "4.add", "--label", "3",
                       "--alpha", "1.5", "--grids", "8,16")
    assert code == 0 and "# correction_order: auto" in out


def test_solve_command_1d(capsys):
    code, out, _ = run(capsys, "solve", "--example", "4.1", "--label", "1", "--alpha", "1.5",
                       "--n", "8")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,value" and len(lines) == 10
    x, U, _ = harness.solve_example("4.1", "1", 1.5, 8)
    values = np.array([float(l.split(",")[1]) for l in lines[1:]])
    np.testing.assert_allclose(values, U, rtol=1e-10)


def test_solve_command_2d(capsys):
    code, out, _ = run(capsys, "solve", "--example", "4.3", "--label", "5", "--alpha", "1.5",
                       "--n", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,y,value" and len(lines) == 26


def test_problem_file(tmp_path, capsys):
    spec = {"alpha": 1.7, "K1": 1.0, "K2": 1.0,
            "solution": {"terms": [[1, 2], [-2, 3], [1, 4]]}}
    path = tmp_path / "problem.json"
    path.write_text(json.dumps(spec))
    code, out, _ = run(capsys, "converge", "--problem", str(path), "--label", "5",
                       "--grids", "16,32,64")
    assert code == 0
    assert out.startswith("# example: custom")
    assert float(out.splitlines()[-1].split(",")[2]) == pytest.approx(2.0, abs=0.2)
    code, out, _ = run(capsys, "solve", "--problem", str(path), "--label", "5", "--n", "8")
    assert code == 0 and out.splitlines()[0] == "x,value"


@pytest.mark.parametrize("content", ["{not json", "[1, 2]", '{"alpha": 1.5}',
                                     '{"alpha": 1.5, "solution": {"terms": [[1, 3]]}, "x": 1}'])
def test_bad_problem_file(tmp_path, capsys, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, _, err = run(capsys, "solve", "--problem", str(path), "--label", "1", "--n", "8")
    assert code == 2 and "error" in err


def test_missing_problem_file(capsys):
    code, _, err = run(capsys, "solve", "--problem", "/nonexistent/p.json", "--label", "1",
                       "--n", "8")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["scheme", "--label", "99", "--alpha", "1.5"],
    ["scheme", "--label", "1", "--alpha", "2.5"],
    ["scheme", "--label", "(2,5)", "--alpha", "1.5"],
    ["scheme", "--alpha", "1.5"],
    ["frobnicate"],
    ["scheme", "--label", "1", "--alpha", "1.5", "--bogus"],
    ["stability", "--label", "1", "--alpha", "1.5", "--n", "2"],
    ["stability", "--label", "1", "--alpha", "1.5", "--n", "20", "--tau-rule", "h/80"],
    ["converge", "--example", "4.1", "--label", "1"],
    ["converge", "--example", "4.1", "--label", "1", "--alpha", "1.5", "--grids", "8,12"],
    ["converge", "--example", "4.1", "--label", "1", "--alpha", "1.5", "--grids", "8,x"],
    ["converge", "--example", "9.9", "--label", "1", "--alpha", "1.5"],
    ["converge", "--example", "4.2", "--label", "1", "--alpha", "1.5", "--grids", "8"],
    ["solve", "--example", "4.1", "--label", "1", "--alpha", "1.5"],
])
def test_configuration_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and err


def test_numerical_failure_exits_1(monkeypatch, capsys):
    def broken(*args, **kwargs):
        return np.zeros(3), np.array([0.0, np.nan, 0.0]), np.nan

    monkeypatch.setattr(harness, "solve_example", broken)
    code, _, err = run(capsys, "solve", "--example", "4.1", "--label", "1", "--alpha", "1.5",
                       "--n", "2")
    assert code == 1 and "numerical failure" in err


def test_help_exits_0(capsys):
    assert cli.main(["--help"]) == 0
    assert "converge" in capsys.readouterr().out


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "quasicompact.cli", "scheme", "--label", "1",
                           "--alpha", "1.5"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "order: 2" in proc.stdout
