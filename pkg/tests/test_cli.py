"""Config handling, deterministic emission and exit codes of the CLI."""

import json
import math
import shutil
import subprocess

import pytest

from richain.cli import main

STD_MODEL = {
    "E": 1.0, "eps": 1.0, "eta": 0.5, "tau": 1.0,
    "N": 2, "beta0": math.log(3), "beta": math.log(2),
}


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestKernelCommand:
    def test_csv_shape_and_values(self, capsys):
        code, out, _ = run_cli(capsys, "kernel")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 2
        header = lines[0].split(",")
        assert header[0] == "run_id"
        assert {"g_re", "g_im", "w_re", "w_im", "z_re", "z_im",
                "abs_z_sq", "eps0", "eps1"} <= set(header)
        assert "wall_time" not in header
        row = dict(zip(header, lines[1].split(",")))
        assert row["run_id"] == "kernel-0000"
        assert row["h4_stable"] == "true"
        # default model: E=2, eps=1, eta=0.5, tau=1
        assert abs(float(row["g_re"]) - math.cos(0.5)) < 1e-15
        assert row["w_re"] == "0"

    def test_seventeen_digit_floats(self, capsys):
        _, out, _ = run_cli(capsys, "kernel")
        header, row = (line.split(",") for line in out.splitlines())
        cells = dict(zip(header, row))
        assert cells["beta0"] == "1.0986122886681098"
        assert cells["beta"] == "0.69314718055994529"

    def test_byte_identical_reruns(self, capsys):
        _, a, _ = run_cli(capsys, "kernel")
        _, b, _ = run_cli(capsys, "kernel")
        assert a == b

    def test_resonant_config(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "schema_version": 1,
            "model": {"E": 1.0, "eps": 1.0, "eta": 1.0, "tau": math.pi / 4, "N": 2},
        })
        _, out, _ = run_cli(capsys, "kernel", "--config", cfg)
        header, row = (line.split(",") for line in out.splitlines())
        cells = dict(zip(header, row))
        assert abs(float(cells["w_im"]) - 1.0 / math.sqrt(2)) < 1e-15
        assert abs(float(cells["z_re"]) - 1.0 / math.sqrt(2)) < 1e-15


class TestJsonFormat:
    def test_round_trip_is_byte_identical(self, tmp_path):
        out_path = tmp_path / "kernel.json"
        assert main(["kernel", "--format", "json", "--output", str(out_path)]) == 0
        text = out_path.read_text(encoding="utf-8")
        obj = json.loads(text)
        assert json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n" == text

    def test_structure(self, tmp_path):
        out_path = tmp_path / "kernel.json"
        main(["kernel", "--format", "json", "--output", str(out_path)])
        obj = json.loads(out_path.read_text(encoding="utf-8"))
        assert obj["schema_version"] == 1
        assert obj["command"] == "kernel"
        rec = obj["records"][0]
        assert rec["oracle_deltas"] is None
        assert "w_re" in rec["outputs"] and "w_im" in rec["outputs"]
        assert "wall_time" not in rec


class TestSimulateCommand:
    def test_per_step_rows(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"schema_version": 1, "model": STD_MODEL})
        code, out, _ = run_cli(capsys, "simulate", "--config", cfg)
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 1 + 3  # header + m = 0, 1, 2
        header = lines[0].split(",")
        rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
        assert [r["m"] for r in rows] == ["0", "1", "2"]
        # m = 0 has no freshly interacted chain mode
        assert rows[0]["beta_star_star"] == "nan"
        assert rows[0]["relative_entropy"] == "0"
        assert abs(float(rows[2]["relative_entropy"]) - 0.082485226948163533) < 1e-15
        totals = {r["total_entropy"] for r in rows}
        assert len(totals) == 1

    def test_infinite_beta_roundtrips_as_inf(self, tmp_path, capsys):
        model = dict(STD_MODEL)
        model["beta0"] = "inf"
        cfg = write_config(tmp_path, {"schema_version": 1, "model": model})
        code, out, _ = run_cli(capsys, "simulate", "--config", cfg)
        assert code == 0
        header, *rows = (line.split(",") for line in out.splitlines())
        cells = dict(zip(header, rows[0]))
        assert cells["beta0"] == "inf"
        assert cells["relative_entropy"] == "nan"

    def test_oracle_deltas(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"schema_version": 1, "model": STD_MODEL})
        code, out, _ = run_cli(capsys, "simulate", "--config", cfg, "--oracle",
                               "--cutoff", "16")
        assert code == 0
        header, *rows = (line.split(",") for line in out.splitlines())
        for row in rows:
            cells = dict(zip(header, row))
            assert float(cells["delta_char_fn_max"]) < 1e-4
            assert float(cells["delta_entropy"]) < 1e-3

    def test_oracle_needs_small_chain(self, capsys):
        # default model has N = 8
        code, _, err = run_cli(capsys, "simulate", "--oracle")
        assert code == 2
        assert "N <= 2" in err


class TestSubsystemCommand:
    def test_window_selector(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "schema_version": 1,
            "model": {"N": 12},
            "subsystem": {
                "kind": "window", "m": 9, "n": 2,
                "alphas": [[[0.5, 0.0], [0.1, 0.2], [0.3, -0.1]]],
            },
        })
        code, out, _ = run_cli(capsys, "subsystem", "--config", cfg)
        assert code == 0
        header, row = (line.split(",") for line in out.splitlines())
        cells = dict(zip(header, row))
        assert 0.0 < float(cells["value_re"]) <= 1.0
        assert float(cells["window_norm_sq"]) > 0.0
        assert float(cells["window_entropy"]) > 0.0

    def test_arity_mismatch_is_config_error(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "schema_version": 1,
            "subsystem": {"kind": "S_plus_Sm", "m": 2, "alphas": [[[0.5, 0.0]]]},
        })
        code, _, err = run_cli(capsys, "subsystem", "--config", cfg)
        assert code == 2
        assert "selector needs" in err

    def test_bad_selector_kind(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "schema_version": 1, "subsystem": {"kind": "bogus", "m": 1},
        })
        code, _, err = run_cli(capsys, "subsystem", "--config", cfg)
        assert code == 2


class TestLimitCommand:
    def test_gibbs_run(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "schema_version": 1,
            "model": {"E": 1.0, "eps": 1.0, "eta": 1.0, "tau": 0.1, "N": 10},
            "limit": {"checkpoints": [100, 1000],
                      "spec": {"kind": "gibbs", "beta": 0.6931471805599453}},
        })
        code, out, _ = run_cli(capsys, "limit", "--config", cfg)
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 3
        header = lines[0].split(",")
        assert {"N", "tau", "tau_sq_N", "tau_cub_N", "value_re", "value_im",
                "limit", "abs_error", "fitted_c1", "fitted_c2", "fitted_bound",
                "monotone_ok"} <= set(header)
        rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
        assert float(rows[1]["abs_error"]) < float(rows[0]["abs_error"])

    def test_invalid_schedule_is_config_error(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "schema_version": 1, "limit": {"exponent": 0.5},
        })
        code, _, err = run_cli(capsys, "limit", "--config", cfg)
        assert code == 2
        assert "schedule" in err

    def test_custom_spec_not_configurable(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "schema_version": 1, "limit": {"spec": {"kind": "custom"}},
        })
        code, _, err = run_cli(capsys, "limit", "--config", cfg)
        assert code == 2


class TestSweepCommand:
    def sweep_config(self, tmp_path):
        return write_config(tmp_path, {
            "schema_version": 1,
            "sweep": {
                "grid": {
                    "E": [1.0, 2.0], "eps": [1.0], "eta": [0.5, 9.0], "tau": [1.0],
                    "beta0": ["inf", math.log(3)], "beta": [math.log(2)], "N": [2],
                },
            },
        })

    def test_grid_with_errors_and_inf(self, tmp_path, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--config", self.sweep_config(tmp_path))
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 9  # header + 2*2*2 points
        header = lines[0].split(",")
        rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
        assert sum(1 for r in rows if r.get("error")) == 4  # eta = 9 points
        inf_rows = [r for r in rows if r["beta0"] == "inf"]
        assert len(inf_rows) == 4
        good = [r for r in rows if not r.get("error") and r["beta0"] == "inf"]
        assert all(r["relative_entropy_N"] == "nan" for r in good)

    def test_requires_section(self, capsys):
        code, _, err = run_cli(capsys, "sweep")
        assert code == 2
        assert "sweep" in err

    def test_output_file_determinism(self, tmp_path, capsys):
        cfg = self.sweep_config(tmp_path)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["sweep", "--config", cfg, "--output", str(out1)]) == 0
        assert main(["sweep", "--config", cfg, "--output", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()


class TestVerifyCommand:
    def test_report_lines_and_exit(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--cutoff", "10",
                               "--tolerance", "0.5")
        assert code == 0
        lines = out.strip().splitlines()
        assert all(line.startswith("PASS") for line in lines[:-1])
        assert lines[-1].endswith("checks passed")

    def test_zero_tolerance_fails(self, capsys, tmp_path):
        out_path = tmp_path / "verify.csv"
        code, out, _ = run_cli(capsys, "verify", "--cutoff", "10",
                               "--tolerance", "0", "--output", str(out_path))
        assert code == 1
        assert "FAIL" in out
        header = out_path.read_text(encoding="utf-8").splitlines()[0].split(",")
        assert {"check", "deviation", "tolerance", "passed"} <= set(header)

    def test_unstable_config_rejected_before_suites(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "schema_version": 1, "model": {"eta": 9.0},
        })
        code, out, err = run_cli(capsys, "verify", "--config", cfg)
        assert code == 2
        assert out == ""  # no check ever ran
        assert "unstable" in err


class TestConfigErrors:
    def test_not_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{nope", encoding="utf-8")
        code, _, err = run_cli(capsys, "kernel", "--config", str(path))
        assert code == 2
        assert "JSON" in err

    def test_wrong_schema_version(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"schema_version": 2})
        code, _, err = run_cli(capsys, "kernel", "--config", cfg)
        assert code == 2
        assert "schema_version" in err

    def test_unknown_model_field(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"schema_version": 1, "model": {"mass": 1.0}})
        code, _, err = run_cli(capsys, "kernel", "--config", cfg)
        assert code == 2
        assert "mass" in err

    def test_bad_beta_string(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"schema_version": 1, "model": {"beta": "cold"}})
        code, _, err = run_cli(capsys, "kernel", "--config", cfg)
        assert code == 2

    def test_malformed_complex_pair(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "schema_version": 1,
            "limit": {"thetas": [[1.0, 0.0, 3.0]], "checkpoints": [100, 1000]},
        })
        code, _, err = run_cli(capsys, "limit", "--config", cfg)
        assert code == 2
        assert "re, im" in err

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "kernel", "--config", "/nonexistent/x.json")
        assert code == 2

    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["bogus"])
        assert exc.value.code == 2


@pytest.mark.skipif(shutil.which("richain") is None,
                    reason="console script not on PATH")
def test_console_script():
    result = subprocess.run(["richain", "kernel"], capture_output=True, text=True)
    assert result.returncode == 0
    assert result.stdout.startswith("run_id,")
