"""Command-line front end: records, exit codes, determinism."""
import json
import shutil
import subprocess
import sys

import pytest

from casimir_cylinders import cli
from casimir_cylinders.errors import NoConvergence
from casimir_cylinders.scattering import EnergyResult

_FIELDS = ("kind", "bc", "a", "b", "d", "method", "value_per_length",
           "err_est", "n_matrix", "p_terms_max", "xi_nodes", "wall_seconds")


def run_cli(*args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "casimir_cylinders", *args],
        capture_output=True, text=True, env=env)


def csv_rows(stdout):
    lines = stdout.splitlines()
    assert lines[0] == "# casimir_cylinders run_record v1"
    assert lines[1] == ",".join(_FIELDS)
    return [dict(zip(_FIELDS, line.split(","))) for line in lines[2:]]


def test_console_script_installed():
    path = shutil.which("casimir-cyl")
    assert path is not None
    proc = subprocess.run([path, "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "compute" in proc.stdout and "sweep" in proc.stdout


def test_compute_closed_form_golden_bytes():
    proc = run_cli("compute", "--kind", "interior", "--bc", "dd",
                   "--a", "1", "--b", "2", "--d", "0.1",
                   "--quantity", "force",
                   "--method", "pfa-leading,asymptotic,pfa-integral",
                   "--no-timing")
    assert proc.returncode == 0
    rows = csv_rows(proc.stdout)
    assert [r["method"] for r in rows] == ["pfa-leading", "asymptotic",
                                           "pfa-integral"]
    assert rows[0]["value_per_length"] == "-127.6698646759269"
    assert rows[1]["value_per_length"] == "-132.8830508168606"
    assert rows[2]["value_per_length"] == "-143.53526457149877"
    for row in rows:
        assert row["err_est"] == "0.0"
        assert row["wall_seconds"] == "0.0"


def test_compute_exact_small_run():
    args = ("compute", "--kind", "interior", "--bc", "dd", "--a", "1",
            "--b", "2", "--d", "0.5", "--method", "exact",
            "--rel-tol", "1e-3", "--no-timing")
    first = run_cli(*args)
    assert first.returncode == 0
    row, = csv_rows(first.stdout)
    value = float(row["value_per_length"])
    assert abs(value - (-0.14359681073521005)) <= 1e-6 * abs(value)
    assert float(row["err_est"]) <= 1e-3 * abs(value)
    assert int(row["n_matrix"]) > 0
    assert int(row["p_terms_max"]) > 0
    assert int(row["xi_nodes"]) >= 32
    # the exact pipeline itself must be run-to-run deterministic
    assert run_cli(*args).stdout == first.stdout


def test_compute_json_round_trip():
    proc = run_cli("compute", "--kind", "exterior", "--bc", "nd",
                   "--a", "1", "--b", "1.5", "--d", "0.3",
                   "--quantity", "force", "--method", "asymptotic",
                   "--format", "json", "--no-timing")
    assert proc.returncode == 0
    records = json.loads(proc.stdout)
    assert len(records) == 1
    assert set(records[0]) == set(_FIELDS)
    assert records[0]["kind"] == "exterior"
    assert records[0]["value_per_length"] > 0.0
    assert records[0]["wall_seconds"] == 0.0


def test_compute_composite_doubles_scalar():
    base = ("compute", "--kind", "interior", "--a", "1", "--b", "2",
            "--d", "0.1", "--quantity", "force", "--method", "pfa-leading",
            "--no-timing")
    dd = csv_rows(run_cli(*base, "--bc", "dd").stdout)[0]
    pc = csv_rows(run_cli(*base, "--bc", "pcpc").stdout)[0]
    assert float(pc["value_per_length"]) == 2.0 * float(dd["value_per_length"])


@pytest.mark.parametrize("args", [
    ("compute", "--kind", "interior", "--bc", "xy", "--a", "1", "--b", "2",
     "--d", "0.1"),
    ("compute", "--kind", "interior", "--bc", "dd", "--a", "1", "--b", "2",
     "--d", "0.1", "--method", "unknown"),
    ("compute", "--kind", "interior", "--bc", "pcpc", "--a", "1", "--b", "2",
     "--d", "0.1", "--method", "exact"),
    ("compute", "--kind", "interior", "--bc", "dd", "--a", "1", "--b", "2",
     "--d", "0.1", "--quantity", "energy", "--method", "pfa-integral"),
    ("compute", "--kind", "interior", "--bc", "dd", "--a", "1", "--b", "2",
     "--d", "-0.1"),
    ("compute", "--kind", "interior", "--bc", "dd", "--a", "2", "--b", "1",
     "--d", "0.1"),
    ("sweep", "--kind", "interior", "--bc", "dd", "--a", "1", "--b", "2",
     "--d-grid", "0.1:0.2"),
    ("sweep", "--kind", "interior", "--bc", "dd", "--a", "1", "--b", "2",
     "--d-grid", "0.1:0.2:0"),
])
def test_invalid_input_exits_2(args):
    proc = run_cli(*args)
    assert proc.returncode == 2
    assert proc.stderr.strip() != ""


def test_sweep_ordering_and_grid():
    proc = run_cli("sweep", "--kind", "interior", "--bc", "dd",
                   "--a", "1", "--b", "2", "--d-grid", "0.2:0.05:3",
                   "--quantity", "force",
                   "--method", "pfa-leading,asymptotic", "--no-timing")
    assert proc.returncode == 0
    rows = csv_rows(proc.stdout)
    assert [(float(r["d"]), r["method"]) for r in rows] == [
        (0.05, "asymptotic"), (0.05, "pfa-leading"),
        (0.1, "asymptotic"), (0.1, "pfa-leading"),
        (0.2, "asymptotic"), (0.2, "pfa-leading"),
    ]


def test_sweep_parallel_determinism():
    base = ("sweep", "--kind", "interior", "--bc", "dd", "--a", "1",
            "--b", "2", "--d-grid", "0.05:0.2:4", "--quantity", "force",
            "--method", "pfa-leading,asymptotic,pfa-integral", "--no-timing")
    serial = run_cli(*base, "--parallel", "1")
    twice = run_cli(*base, "--parallel", "1")
    pooled = run_cli(*base, "--parallel", "2")
    assert serial.returncode == pooled.returncode == 0
    assert serial.stdout == twice.stdout
    assert serial.stdout == pooled.stdout


def test_sweep_thread_env_default(monkeypatch):
    import os
    env = dict(os.environ, CASIMIR_CYL_THREADS="2")
    base = ("sweep", "--kind", "exterior", "--bc", "dn", "--a", "1",
            "--b", "1.5", "--d-grid", "0.1:0.3:3", "--quantity", "force",
            "--method", "pfa-leading", "--no-timing")
    with_env = run_cli(*base, env=env)
    plain = run_cli(*base)
    assert with_env.returncode == 0
    assert with_env.stdout == plain.stdout


def test_verify_fast_passes():
    proc = run_cli("verify", "--suite", "all", "--level", "fast")
    assert proc.returncode == 0
    assert "verification: ok" in proc.stdout
    assert "FAIL" not in proc.stdout
    for suite in ("bessel", "oracle", "asymptotics"):
        assert f"== {suite} ==" in proc.stdout


def test_verify_failure_exits_1(monkeypatch, capsys):
    monkeypatch.setattr(cli, "e0_coefficient_check", lambda chi: 1.0)
    code = cli.main(["verify", "--suite", "oracle", "--level", "fast"])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL  zeta sums" in out
    assert "verification: FAILED" in out


def test_nonconvergence_exits_3(monkeypatch, capsys):
    def blow_up(pair, bc, rel_tol):
        raise NoConvergence("matrix truncation still moving")

    monkeypatch.setattr(cli, "casimir_energy_exact", blow_up)
    code = cli.main(["compute", "--kind", "interior", "--bc", "dd",
                     "--a", "1", "--b", "2", "--d", "0.1",
                     "--format", "json", "--no-timing"])
    captured = capsys.readouterr()
    assert code == 3
    assert "still moving" in captured.err
    # the partial record is still emitted, with nulls for the unknown value
    records = json.loads(captured.out)
    assert records[0]["value_per_length"] is None
    assert records[0]["method"] == "exact"


def test_unconverged_result_exits_3_with_record(monkeypatch, capsys):
    stub = EnergyResult(value_per_length=-1.5, err_est=0.5, n_matrix=64,
                        p_terms_max=100, xi_nodes=256, converged=False)
    monkeypatch.setattr(cli, "casimir_energy_exact",
                        lambda pair, bc, rel_tol: stub)
    code = cli.main(["compute", "--kind", "interior", "--bc", "dd",
                     "--a", "1", "--b", "2", "--d", "0.1", "--no-timing"])
    captured = capsys.readouterr()
    assert code == 3
    assert "not converged" in captured.err
    row = captured.out.splitlines()[2]
    assert row.split(",")[6] == "-1.5"
