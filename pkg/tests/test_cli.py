"""Command-line interface: reports, exit codes, determinism, file formats."""

import json

import pytest

from airy_gap import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def strip_timing(report_text):
    payload = json.loads(report_text)
    payload.pop("timing_seconds")
    return payload


# ---------------------------------------------------------------------------
# det
# ---------------------------------------------------------------------------

def test_det_basic_report(tmp_path, capsys):
    cfg = write_config(tmp_path, {"x": [-2.0], "s": [0.0]})
    code, out, _ = run(["det", cfg, "--nodes", "24", "--refine", "2"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == cli.SCHEMA_VERSION
    assert payload["command"] == "det"
    labels = {r["label"]: r["value"] for r in payload["results"]}
    assert abs(labels["log_f"] + 0.8837651153091381) < 1e-8
    assert labels["converged"] == 1.0
    assert len(payload["convergence"]) == 3
    assert [n for n, _ in payload["convergence"]] == [24, 48, 96]


def test_det_trivial_weights(tmp_path, capsys):
    cfg = write_config(tmp_path, {"x": [-2.0, -3.0], "s": [1.0, 1.0]})
    code, out, _ = run(["det", cfg], capsys)
    labels = {r["label"]: r["value"] for r in json.loads(out)["results"]}
    assert code == 0 and labels["log_f"] == 0.0


def test_det_rejects_bad_ordering(tmp_path, capsys):
    cfg = write_config(tmp_path, {"x": [-3.0, -1.0], "s": [0.5, 0.5]})
    code, _, err = run(["det", cfg], capsys)
    assert code == 2
    assert "endpoints must be strictly decreasing" in err


def test_det_missing_file(capsys):
    code, _, err = run(["det", "/nonexistent/config.json"], capsys)
    assert code == 3


def test_config_validation_rules(tmp_path, capsys):
    # both s and beta
    cfg = write_config(tmp_path, {"x": [-1.0], "s": [0.5], "beta": ["0.1i"]})
    assert run(["det", cfg], capsys)[0] == 2
    # inconsistent x vs r*tau
    cfg = write_config(tmp_path, {"x": [-3.0], "tau": [-1.0], "r": 2.0, "s": [0.5]})
    assert run(["det", cfg], capsys)[0] == 2
    # m mismatch
    cfg = write_config(tmp_path, {"m": 2, "x": [-1.0], "s": [0.5]})
    assert run(["det", cfg], capsys)[0] == 2
    # unknown field
    cfg = write_config(tmp_path, {"x": [-1.0], "s": [0.5], "frobnicate": 1})
    assert run(["det", cfg], capsys)[0] == 2
    # malformed JSON
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(["det", str(path)], capsys)[0] == 2


def test_tau_r_parametrization(tmp_path, capsys):
    cfg = write_config(tmp_path, {"tau": [-1.0], "r": 2.0, "s": [0.0]})
    code, out, _ = run(["det", cfg, "--nodes", "24", "--refine", "1"], capsys)
    labels = {r["label"]: r["value"] for r in json.loads(out)["results"]}
    assert code == 0
    assert abs(labels["log_f"] + 0.8837651153091381) < 1e-8


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------

def test_compare_thinned_route(tmp_path, capsys):
    cfg = write_config(tmp_path, {"tau": [-1.0, -2.0], "beta": ["-0.2i", "-0.2i"]})
    out_csv = tmp_path / "cmp.csv"
    code, out, _ = run(["compare", cfg, "--r-list", "4,6", "--nodes", "32",
                        "--out", str(out_csv)], capsys)
    assert code == 0
    labels = {r["label"]: r["value"] for r in json.loads(out)["results"]}
    assert labels["gap_final"] < 0.05
    lines = out_csv.read_bytes().decode().splitlines()
    assert lines[0] == "r,log_numeric,log_asymptotic,gap,gap_r32_over_logr"
    assert len(lines) == 3


def test_compare_conditioned_route(tmp_path, capsys):
    cfg = write_config(tmp_path, {"tau": [-1.0, -2.0], "s": [0.0, 0.5]})
    code, out, _ = run(["compare", cfg, "--r-list", "4,5", "--nodes", "24"], capsys)
    assert code == 0
    labels = {r["label"]: r["value"] for r in json.loads(out)["results"]}
    assert labels["gap_final"] < 0.1


def test_compare_validation(tmp_path, capsys):
    cfg = write_config(tmp_path, {"tau": [-1.0, -2.0], "s": [0.5, 0.5]})
    assert run(["compare", cfg, "--r-list", ""], capsys)[0] == 2
    assert run(["compare", cfg, "--r-list", "6,4"], capsys)[0] == 2
    cfg_x = write_config(tmp_path, {"x": [-1.0], "s": [0.5]}, "x_only.json")
    assert run(["compare", cfg_x, "--r-list", "4,6"], capsys)[0] == 2


def test_compare_trivial_parameters_tiny_gap(tmp_path, capsys):
    cfg = write_config(tmp_path, {"tau": [-1.0], "s": [1.0]})
    code, out, _ = run(["compare", cfg, "--r-list", "4,6", "--nodes", "16"], capsys)
    labels = {r["label"]: r["value"] for r in json.loads(out)["results"]}
    assert code == 0
    assert labels["gap_final"] < 1e-8


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------

def test_stats_halfline(tmp_path, capsys):
    code, out, _ = run(["stats", "--x", "-10"], capsys)
    assert code == 0
    labels = {r["label"]: r["value"] for r in json.loads(out)["results"]}
    assert labels["mean_gap"] < 0.02
    assert labels["var_gap"] < 0.05


def test_stats_interval(tmp_path, capsys):
    code, out, _ = run(["stats", "--interval", "-20", "-10"], capsys)
    assert code == 0
    labels = {r["label"]: r["value"] for r in json.loads(out)["results"]}
    assert labels["additivity_residual"] < 1e-9
    assert labels["halfline_cov_gap"] < 0.05
    assert labels["interval_var_gap"] < 0.05


def test_stats_validation(capsys):
    assert run(["stats"], capsys)[0] == 2
    assert run(["stats", "--x", "-3", "--interval", "-3", "-1"], capsys)[0] == 2
    assert run(["stats", "--interval", "-1", "-3"], capsys)[0] == 2
    assert run(["stats", "--x", "2.0"], capsys)[0] == 2


# ---------------------------------------------------------------------------
# parametrix
# ---------------------------------------------------------------------------

def test_parametrix_airy(capsys):
    code, out, _ = run(["parametrix", "--model", "airy"], capsys)
    assert code == 0
    labels = {r["label"]: r["value"] for r in json.loads(out)["results"]}
    assert labels["jump_max"] < 1e-9
    assert labels["det_max"] < 1e-10
    assert labels["coeff_error"] < 1e-5


def test_parametrix_bessel(capsys):
    code, out, _ = run(["parametrix", "--model", "bessel"], capsys)
    labels = {r["label"]: r["value"] for r in json.loads(out)["results"]}
    assert code == 0
    assert labels["coeff_error"] < 1e-5


def test_parametrix_chg(capsys):
    code, out, _ = run(["parametrix", "--model", "chg", "--beta", "0.3i"], capsys)
    labels = {r["label"]: r["value"] for r in json.loads(out)["results"]}
    assert code == 0
    assert labels["jump_max"] < 1e-7
    assert labels["coeff_error"] < 1e-4
    assert labels["logderivative_error"] < 1e-4


def test_parametrix_validation(capsys):
    assert run(["parametrix", "--model", "chg"], capsys)[0] == 2
    assert run(["parametrix", "--model", "chg", "--beta", "0.9i"], capsys)[0] == 2
    assert run(["parametrix", "--model", "chg", "--beta", "1+2i"], capsys)[0] == 2
    assert run(["parametrix", "--model", "airy", "--beta", "0.1i"], capsys)[0] == 2


def test_parse_imag_variants():
    assert cli.parse_imag("0.3i") == 0.3j
    assert cli.parse_imag("-0.25j") == -0.25j
    assert cli.parse_imag("0.4") == 0.4j
    with pytest.raises(cli.ValidationError):
        cli.parse_imag("1+1j")
    with pytest.raises(cli.ValidationError):
        cli.parse_imag("abc")


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def test_sweep_nodes(tmp_path, capsys):
    cfg = write_config(tmp_path, {"x": [-2.0], "s": [0.0]})
    out_csv = tmp_path / "nodes.csv"
    code, out, _ = run(["sweep", cfg, "--vary", "nodes", "--values", "16,24,32",
                        "--out", str(out_csv)], capsys)
    assert code == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "nodes,log_f,est_error"
    assert len(lines) == 4


def test_sweep_weight_field(tmp_path, capsys):
    cfg = write_config(tmp_path, {"x": [-2.0, -4.0], "s": [0.5, 0.5]})
    out_csv = tmp_path / "s2.csv"
    code, _, _ = run(["sweep", cfg, "--vary", "s_2", "--values", "0.4,0.6",
                      "--nodes", "24", "--out", str(out_csv)], capsys)
    assert code == 0
    rows = out_csv.read_text().splitlines()
    assert rows[0] == "s_2,log_f,log_asymptotic,gap"
    assert len(rows) == 3


def test_sweep_r_field(tmp_path, capsys):
    cfg = write_config(tmp_path, {"tau": [-1.0], "s": [0.3]})
    out_csv = tmp_path / "r.csv"
    code, _, _ = run(["sweep", cfg, "--vary", "r", "--values", "3,4",
                      "--nodes", "24", "--out", str(out_csv)], capsys)
    assert code == 0
    assert len(out_csv.read_text().splitlines()) == 3


def test_sweep_validation(tmp_path, capsys):
    cfg = write_config(tmp_path, {"x": [-2.0], "s": [0.5]})
    out_csv = str(tmp_path / "o.csv")
    assert run(["sweep", cfg, "--vary", "nodes", "--values", "", "--out", out_csv], capsys)[0] == 2
    assert run(["sweep", cfg, "--vary", "zeta", "--values", "1", "--out", out_csv], capsys)[0] == 2
    assert run(["sweep", cfg, "--vary", "s_7", "--values", "0.5", "--out", out_csv], capsys)[0] == 2
    code, _, _ = run(["sweep", cfg, "--vary", "nodes", "--values", "8,16",
                      "--out", "/nonexistent-dir/out.csv"], capsys)
    assert code == 3


def test_sweep_respects_thread_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AIRY_GAP_THREADS", "2")
    cfg = write_config(tmp_path, {"x": [-2.0], "s": [0.5]})
    out_csv = tmp_path / "t.csv"
    code, _, _ = run(["sweep", cfg, "--vary", "nodes", "--values", "8,12,16",
                      "--out", str(out_csv)], capsys)
    assert code == 0
    assert len(out_csv.read_text().splitlines()) == 4
    monkeypatch.setenv("AIRY_GAP_THREADS", "zero")
    assert run(["sweep", cfg, "--vary", "nodes", "--values", "8",
                "--out", str(out_csv)], capsys)[0] == 2


# ---------------------------------------------------------------------------
# determinism and serialization
# ---------------------------------------------------------------------------

def test_reports_deterministic(tmp_path, capsys):
    cfg = write_config(tmp_path, {"x": [-2.0, -3.5], "s": [0.4, 0.8]})
    _, out1, _ = run(["det", cfg, "--nodes", "24"], capsys)
    _, out2, _ = run(["det", cfg, "--nodes", "24"], capsys)
    assert strip_timing(out1) == strip_timing(out2)
    assert json.dumps(strip_timing(out1), sort_keys=True) == json.dumps(strip_timing(out2), sort_keys=True)


def test_csv_deterministic_bytes(tmp_path, capsys):
    cfg = write_config(tmp_path, {"x": [-2.0], "s": [0.0]})
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(["sweep", cfg, "--vary", "nodes", "--values", "16,24", "--out", str(a)], capsys)
    run(["sweep", cfg, "--vary", "nodes", "--values", "16,24", "--out", str(b)], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_json_file_output(tmp_path, capsys):
    cfg = write_config(tmp_path, {"x": [-2.0], "s": [0.5]})
    json_path = tmp_path / "report.json"
    code, out, _ = run(["det", cfg, "--nodes", "16", "--json", str(json_path)], capsys)
    assert code == 0
    on_disk = json.loads(json_path.read_text())
    assert strip_timing(out) == {k: v for k, v in on_disk.items() if k != "timing_seconds"}


def test_csv_seventeen_digit_roundtrip(tmp_path, capsys):
    cfg = write_config(tmp_path, {"x": [-2.0], "s": [0.0]})
    out_csv = tmp_path / "x.csv"
    run(["sweep", cfg, "--vary", "nodes", "--values", "24", "--out", str(out_csv)], capsys)
    header, row = out_csv.read_text().splitlines()[:2]
    log_f = float(row.split(",")[1])
    from airy_gap import fredholm as fr
    ref = fr.log_det(fr.GapConfig((-2.0,), (0.0,)), nodes_per_panel=24, refine=1).log_f
    assert log_f == ref  # 17 significant digits round-trip doubles exactly


def test_sweep_beta_field(tmp_path, capsys):
    cfg = write_config(tmp_path, {"x": [-2.0, -4.0], "s": [0.5, 0.5]})
    out_csv = tmp_path / "b1.csv"
    # negative comma lists need the = form so argparse keeps them as values
    code, _, _ = run(["sweep", cfg, "--vary", "beta_1", "--values=-0.1,-0.2",
                      "--nodes", "24", "--out", str(out_csv)], capsys)
    assert code == 0
    rows = out_csv.read_text().splitlines()
    assert rows[0] == "beta_1,log_f,log_asymptotic,gap"
    assert len(rows) == 3
    # s_1 = 0 configs cannot sweep a jump parameter
    cfg0 = write_config(tmp_path, {"x": [-2.0, -4.0], "s": [0.0, 0.5]}, "zero.json")
    assert run(["sweep", cfg0, "--vary", "beta_2", "--values=-0.1",
                "--out", str(out_csv)], capsys)[0] == 2
