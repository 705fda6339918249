"""CLI surface: formats, determinism, exit codes, spec examples."""

import json
import math

import pytest

from fareychain import cli, suites


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_thermo_exact_value(capsys):
    code, out = run_cli(capsys, "thermo", "--n", "2", "--beta", "2", "--h", "0")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,beta,t,h,f,u,m,s,chi"
    row = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert float(row["f"]) == pytest.approx(-math.log(13.0 / 18.0) / 4.0, rel=1e-15)
    assert float(row["m"]) == 0.0
    assert float(row["t"]) == 0.0  # beta_c = 2


def test_thermo_zero_field_near_critical(capsys):
    code, out = run_cli(capsys, "thermo", "--n", "20", "--beta", "3", "--h", "0")
    assert code == 0
    row = out.strip().split("\n")[1].split(",")
    f, m = float(row[4]), float(row[6])
    assert m == 0.0
    assert abs(f) < 0.03


def test_thermo_scan_magnetization_rises(capsys):
    code, out = run_cli(
        capsys, "thermo", "--n", "20", "--beta-range", "1:4:0.5", "--h", "0.05"
    )
    assert code == 0
    ms = [float(line.split(",")[6]) for line in out.strip().split("\n")[1:]]
    assert len(ms) == 7
    assert all(a < b for a, b in zip(ms, ms[1:]))
    assert ms[-1] > 0.99  # saturates toward 1 past beta_c


def test_thermo_json_schema(capsys):
    code, out = run_cli(
        capsys, "thermo", "--n", "4", "--beta", "1.5", "--h", "0.2", "--format", "json"
    )
    assert code == 0
    obj = json.loads(out.strip())
    assert obj["schema_version"] == 1
    assert obj["n"] == 4
    assert math.isfinite(obj["f"])


def test_thermo_deterministic_across_threads(capsys):
    outputs = set()
    for threads in ("1", "2", "8"):
        _, out = run_cli(
            capsys,
            "thermo",
            "--n",
            "14",
            "--beta-range",
            "1:4:0.5",
            "--h-range",
            "0:0.4:0.2",
            "--threads",
            threads,
        )
        outputs.add(out)
    assert len(outputs) == 1


def test_output_file_matches_stdout(tmp_path, capsys):
    _, out = run_cli(capsys, "thermo", "--n", "6", "--beta", "2.5", "--h", "0.1")
    path = tmp_path / "scan.csv"
    code = cli.main(
        ["thermo", "--n", "6", "--beta", "2.5", "--h", "0.1", "--output", str(path)]
    )
    capsys.readouterr()
    assert code == 0
    assert path.read_bytes().decode() == out


def test_phase_diagram_kdp_endpoint(capsys):
    code, out = run_cli(
        capsys, "phase-diagram", "--model", "kdp-endpoint", "--t-range", "0.1:0.3:0.1"
    )
    assert code == 0
    rows = [line.split(",") for line in out.strip().split("\n")[1:]]
    for row in rows:
        assert float(row[1]) == pytest.approx(float(row[0]), rel=1e-14)  # h* = eps t
        assert row[4] == "ok"


def test_phase_diagram_kdp_site_series(capsys):
    code, out = run_cli(
        capsys, "phase-diagram", "--model", "kdp-site", "--t-range", "0.05:0.05:1"
    )
    assert code == 0
    row = out.strip().split("\n")[1].split(",")
    series = 0.05 + 0.5 * math.log(2.0) * 0.05**2
    assert float(row[1]) == pytest.approx(series, abs=5e-4)


def test_phase_diagram_ffsc_slow_variation(capsys):
    code, out = run_cli(
        capsys,
        "phase-diagram",
        "--model",
        "ffsc-rg",
        "--t-range",
        "0.0001:0.0005:0.0001",
        "--format",
        "json",
    )
    assert code == 0
    rows = [json.loads(line) for line in out.strip().split("\n")]
    assert all(r["status"] == "ok" for r in rows)
    # h*/t ~ 1/ln(t0/t): the scaled combination is t-independent
    scaled = [r["h_star"] / r["t"] * math.log(1.0 / r["t"]) for r in rows]
    assert max(scaled) / min(scaled) == pytest.approx(1.0, rel=1e-9)
    assert all(r["delta_m"] == pytest.approx(math.sqrt(1 - 0.075), rel=1e-12) for r in rows)


def test_phase_diagram_ffsc_no_root_flagged(capsys):
    code, out = run_cli(
        capsys,
        "phase-diagram",
        "--model",
        "ffsc-rg",
        "--t-range",
        "0.001:0.002:0.001",
        "--a",
        "-2.0",
    )
    assert code == 0
    rows = [line.split(",") for line in out.strip().split("\n")[1:]]
    assert len(rows) == 2  # flagged, not dropped
    assert all(row[-1] == "no-real-root" for row in rows)
    assert all(row[1] == "" for row in rows)


def test_verify_suites_pass(capsys):
    code, out = run_cli(capsys, "verify", "bounds", "--n-max", "8")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out
    assert out.strip().endswith("ALL PASS")
    code, out = run_cli(capsys, "verify", "rg")
    assert code == 0


def test_verify_failure_exit_code(capsys, monkeypatch):
    def broken(n_max=1, cap=None):
        return [("synthetic check", False, "forced failure")]

    monkeypatch.setitem(suites._SUITES, "bounds", broken)
    code, out = run_cli(capsys, "verify", "bounds")
    assert code == 1
    assert "FAIL" in out


def test_extrapolate_json(capsys):
    code, out = run_cli(
        capsys, "extrapolate", "--beta", "3", "--h", "0.5", "--n-min", "8", "--n-max", "18"
    )
    assert code == 0
    obj = json.loads(out.strip())
    assert obj["schema_version"] == 1
    assert abs(obj["f_infinity"] + 0.5) <= 0.02


def test_moments_cli(capsys):
    code, out = run_cli(capsys, "moments", "--level", "10", "--m", "1")
    assert code == 0
    assert json.loads(out.strip())["sum"] == 1.0
    code, out = run_cli(
        capsys, "moments", "--scaling-report", "--n-max", "10", "--orders", "2,3"
    )
    assert code == 0
    rows = [json.loads(line) for line in out.strip().split("\n")]
    assert [r["order"] for r in rows] == [2, 3]


def test_fss_cli(capsys):
    code, out = run_cli(capsys, "fss", "--n-min", "8", "--n-max", "14")
    assert code == 0
    obj = json.loads(out.strip())
    assert obj["beta"] == 2.0
    assert math.isfinite(obj["exponent_p"]) and math.isfinite(obj["residual"])


def test_bad_arguments_exit_two(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["thermo", "--n", "4", "--beta-range", "4:1:0.5"])
    assert err.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as err:
        cli.main(["thermo", "--n", "4"])  # beta missing
    assert err.value.code == 2
    capsys.readouterr()


def test_cap_exceeded_exit_three(capsys):
    code = cli.main(["thermo", "--n", "40", "--beta", "1", "--h", "0"])
    captured = capsys.readouterr()
    assert code == 3
    assert "cap" in captured.err


def test_cap_flag_controls_refusal(capsys):
    code = cli.main(["thermo", "--n", "10", "--beta", "1", "--h", "0", "--cap", "8"])
    captured = capsys.readouterr()
    assert code == 3 and "cap" in captured.err
    code, out = run_cli(
        capsys, "thermo", "--n", "10", "--beta", "1", "--h", "0", "--cap", "12"
    )
    assert code == 0 and len(out.strip().split("\n")) == 2
