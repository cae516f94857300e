import json
import subprocess
import sys

import pytest

from satchoice.cli import main
from satchoice.formula import is_satisfying, parse_dimacs


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_solve_round_trip(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    code, _, _ = run(capsys, "gen", "--n", "40", "--k", "3", "--alpha", "3", "--choices", "2",
                     "--seed", "5", "--out", str(cnf))
    assert code == 0
    f = parse_dimacs(cnf.read_text())
    assert (f.n, f.m) == (40, 120)
    code, out, _ = run(capsys, "solve", str(cnf))
    assert code == 0 and out.startswith("s SATISFIABLE")
    values = [int(x) for x in out.splitlines()[1].split()[1:-1]]
    assert is_satisfying(f, {abs(x): x > 0 for x in values})


def test_gen_is_deterministic(capsys):
    a = run(capsys, "gen", "--n", "30", "--k", "3", "--m", "50", "--seed", "1")[1]
    b = run(capsys, "gen", "--n", "30", "--k", "3", "--m", "50", "--seed", "1")[1]
    assert a == b


def test_gen_config_file_with_override(tmp_path, capsys):
    cfg = tmp_path / "g.json"
    cfg.write_text(json.dumps({"n": 30, "k": 3, "t": 2, "rule": "uniform", "seed": 2, "m": 10}))
    code, out, _ = run(capsys, "gen", "--config", str(cfg), "--m", "12")
    assert code == 0 and "p cnf 30 12" in out


def test_reduce_and_two_sat(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    run(capsys, "gen", "--n", "200", "--k", "3", "--alpha", "3", "--t", "3", "--out", str(cnf))
    red = tmp_path / "r.cnf"
    assert run(capsys, "reduce", str(cnf), "--ell", "2", "--out", str(red))[0] == 0
    assert parse_dimacs(red.read_text()).widths.max() == 2
    code, out, _ = run(capsys, "solve", str(red), "--engine", "2sat")
    assert code == 0 and out.splitlines()[0] in ("s SATISFIABLE", "s UNSATISFIABLE")
    # 2sat refuses width-3 input
    assert run(capsys, "solve", str(cnf), "--engine", "2sat")[0] == 1


def test_heuristic_with_trace(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    run(capsys, "gen", "--n", "1000", "--k", "3", "--alpha", "2", "--out", str(cnf))
    trace = tmp_path / "trace.csv"
    code, out, _ = run(capsys, "heuristic", str(cnf), "--engine", "bsc", "--trace", str(trace))
    rec = json.loads(out.splitlines()[0])
    assert code == 0 and rec["outcome"] == "success" and rec["steps"] == 1000
    assert trace.read_text().startswith("T,S_1_0")


def test_analyze_critical_json(capsys):
    code, out, _ = run(capsys, "analyze", "critical", "--model", "buc", "--k", "3", "--ell", "3", "--t", "2")
    rec = json.loads(out)
    assert code == 0
    assert rec == {"model": "buc", "k": 3, "t": 2, "ell": 3, "alpha_star": 4.232, "tolerance": 0.001}


def test_analyze_trajectory(tmp_path, capsys):
    out = tmp_path / "traj.csv"
    code, _, _ = run(capsys, "analyze", "trajectory", "--model", "bsc", "--k", "3", "--alpha", "4.0",
                     "--out", str(out))
    assert code == 0
    assert out.read_text().splitlines()[0].endswith("lambda,q0,q1,p_free")
    assert json.loads((tmp_path / "traj.csv.json").read_text())["critical_t"] is None


def test_calc_commands(capsys):
    rec = json.loads(run(capsys, "calc", "two-sat-threshold", "--k", "3", "--choices", "3")[1])
    assert rec["closed_form"] == pytest.approx(rec["numeric"], rel=1e-10) and rec["closed_form"] > 4.86
    rec = json.loads(run(capsys, "calc", "two-sat-threshold", "--p", "0.25", "0.5", "0.25")[1])
    assert rec["alpha_star"] == pytest.approx(1.0)
    rec = json.loads(run(capsys, "calc", "gamma", "--k", "3")[1])
    assert abs(rec["closed_form"]["a"] - rec["numeric"]["a"]) < 1e-6
    rec = json.loads(run(capsys, "calc", "gamma", "--k", "3", "--t", "4")[1])
    assert "closed_form" not in rec
    assert json.loads(run(capsys, "calc", "min-choices")[1])["min_choices"] == 6


def test_sweep_cli(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "s.json"
    cfg.write_text(json.dumps({"k": 3, "t": 2, "engine": "bsc", "n": 300, "start": 3.0, "stop": 6.0,
                               "step": 3.0, "trials": 8, "seed": 4}))
    out = tmp_path / "s.csv"
    code, _, err = run(capsys, "sweep", "--config", str(cfg), "--out", str(out))
    assert code == 0 and "transition" in err
    first = out.read_text()
    monkeypatch.setenv("SATCHOICE_WORKERS", "2")
    run(capsys, "sweep", "--config", str(cfg), "--out", str(out))
    assert out.read_text() == first
    assert first.splitlines()[0] == "alpha,trials,successes,rate,ci_low,ci_high"


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["gen", "--n", "10"],
    ["gen", "--n", "10", "--k", "3", "--m", "2", "--alpha", "1"],
    ["calc", "gamma", "--k", "3", "--a", "2"],
    ["sweep", "--k", "3", "--choices", "2", "--engine", "bsc", "--n", "10", "--start", "5", "--stop", "4"],
    ["analyze", "critical", "--model", "bsc", "--k", "4", "--ell", "4"],
])
def test_usage_errors_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as e:
        sys.exit(main(argv))
    assert e.value.code == 1


def test_runtime_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 2 1\n1 5 0\n")
    assert run(capsys, "solve", str(bad))[0] == 2
    assert run(capsys, "solve", str(tmp_path / "missing.cnf"))[0] == 2


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "satchoice.cli", "calc", "min-choices", "--k", "3"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["min_choices"] == 6
