import json

import pytest
from click.testing import CliRunner

from spikeclan.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def simulate_args(out, n=300, seed=42, extra=()):
    return ["simulate", "-n", str(n), "--seed", str(seed), "--out", str(out), *extra]


class TestSimulate:
    def test_writes_all_outputs(self, runner, tmp_path):
        out = tmp_path / "run"
        result = runner.invoke(cli, simulate_args(out, n=1000))
        assert result.exit_code == 0, result.output
        for name in ("summaries.csv", "report.json", "histograms.csv"):
            assert (out / name).exists()
        report = json.loads((out / "report.json").read_text())
        assert 0.28 <= report["zero_probability"]["estimate"] <= 0.39
        assert report["budget_exhausted_count"] == 0

    def test_invalid_rate_bounds_exit_2(self, runner, tmp_path):
        result = runner.invoke(cli, simulate_args(tmp_path, extra=[
            "--beta-min", "3", "--beta-max", "2"]))
        assert result.exit_code == 2
        assert "beta_max" in result.output

    def test_zero_replicates_exit_2(self, runner, tmp_path):
        result = runner.invoke(cli, simulate_args(tmp_path, n=0))
        assert result.exit_code == 2
        assert "replicates" in result.output

    def test_unwritable_out_exit_4(self, runner, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        result = runner.invoke(cli, simulate_args(blocker / "sub"))
        assert result.exit_code == 4
        assert "blocker" in result.output

    def test_byte_identical_reruns_across_worker_counts(self, runner, tmp_path):
        outs = []
        for tag, workers in (("a", 1), ("b", 2), ("c", 1)):
            out = tmp_path / tag
            result = runner.invoke(cli, simulate_args(out, n=400, extra=[
                "--workers", str(workers)]))
            assert result.exit_code == 0, result.output
            outs.append(tuple((out / name).read_bytes() for name in
                              ("summaries.csv", "report.json", "histograms.csv")))
        assert outs[0] == outs[1] == outs[2]

    def test_config_file_with_flag_override(self, runner, tmp_path):
        cfg = tmp_path / "model.json"
        cfg.write_text(json.dumps({"lambda": 0.1, "W": 2.0}))
        out = tmp_path / "run"
        result = runner.invoke(cli, simulate_args(out, n=50, extra=[
            "--config", str(cfg), "--w", "1.0"]))
        assert result.exit_code == 0, result.output
        report = json.loads((out / "report.json").read_text())
        assert report["config"]["lambda"] == 0.1   # from the file
        assert report["config"]["W"] == 1.0        # flag wins

    def test_config_file_unknown_key_exit_2(self, runner, tmp_path):
        cfg = tmp_path / "model.json"
        cfg.write_text(json.dumps({"foo": 1}))
        result = runner.invoke(cli, simulate_args(tmp_path / "run", extra=[
            "--config", str(cfg)]))
        assert result.exit_code == 2
        assert "foo" in result.output

    def test_env_var_override(self, runner, tmp_path):
        out = tmp_path / "run"
        result = runner.invoke(cli, ["simulate", "-n", "50", "--out", str(out)],
                               env={"SPIKECLAN_SIMULATE_SEED": "7"})
        assert result.exit_code == 0, result.output
        report = json.loads((out / "report.json").read_text())
        assert report["master_seed"] == 7

    def test_budget_exhaustion_exit_3(self, runner, tmp_path):
        out = tmp_path / "run"
        result = runner.invoke(cli, [
            "simulate", "-n", "8", "--seed", "0", "--out", str(out),
            "--beta-min", "0.3", "--budget", "1500"])
        assert result.exit_code == 3
        assert "exceeds threshold" in result.output
        assert (out / "summaries.csv").exists()


class TestPhaseScan:
    def test_two_point_grid(self, runner, tmp_path):
        out = tmp_path / "phase"
        result = runner.invoke(cli, ["phase-scan", "--grid", "0.5,1.5",
                                     "--replicates", "3000", "--out", str(out)])
        assert result.exit_code == 0, result.output
        lines = (out / "phase.csv").read_text().splitlines()
        assert len(lines) == 3
        est = [float(line.split(",")[1]) for line in lines[1:]]
        assert abs(est[0] - 0.5) < 0.05
        assert est[1] == pytest.approx(1.0)

    def test_single_point_grid(self, runner, tmp_path):
        result = runner.invoke(cli, ["phase-scan", "--grid", "2",
                                     "--replicates", "500", "--out", str(tmp_path / "p")])
        assert result.exit_code == 0
        assert len((tmp_path / "p" / "phase.csv").read_text().splitlines()) == 2

    def test_empty_grid_exit_2(self, runner, tmp_path):
        result = runner.invoke(cli, ["phase-scan", "--grid", "",
                                     "--out", str(tmp_path / "p")])
        assert result.exit_code == 2

    def test_negative_delta_exit_2(self, runner, tmp_path):
        result = runner.invoke(cli, ["phase-scan", "--grid", "0.5,-1",
                                     "--out", str(tmp_path / "p")])
        assert result.exit_code == 2


class TestTrace:
    def test_writes_both_dumps(self, runner, tmp_path):
        out = tmp_path / "trace"
        result = runner.invoke(cli, ["trace", "--seed", "3", "--out", str(out)])
        assert result.exit_code == 0, result.output
        back = (out / "backward_trace.csv").read_text().splitlines()
        fwd = (out / "forward_trace.csv").read_text().splitlines()
        assert back[0] == "index,neuron,time,mark,sure,clan_size,simulated_size"
        assert fwd[0] == "index,neuron,time,potential,resolution"
        assert len(back) == len(fwd)  # one row per jump in both dumps

    def test_validation_exit_2(self, runner, tmp_path):
        result = runner.invoke(cli, ["trace", "--range", "0", "--out", str(tmp_path)])
        assert result.exit_code == 2
        assert "range" in result.output

    def test_unwritable_out_exit_4(self, runner, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        result = runner.invoke(cli, ["trace", "--out", str(blocker / "sub")])
        assert result.exit_code == 4
