import csv
import json
from importlib import resources
from pathlib import Path

import pytest

from flra.cli import (
    EXIT_INFEASIBLE,
    EXIT_OK,
    EXIT_USAGE,
    _SOLUTION_HEADER,
    main,
)
from flra.scenario import dump_scenario, load_scenario, ScenarioError


def scenario_path(name: str) -> str:
    return str(resources.files("flra").joinpath(f"scenarios/{name}.json"))


@pytest.fixture
def c1():
    return scenario_path("c1")


def read_csv(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


class TestScenarioFiles:
    @pytest.mark.parametrize("name", ["default", "c1", "c2", "c3", "c4", "c5"])
    def test_shipped_scenarios_round_trip(self, name, tmp_path):
        scn = load_scenario(scenario_path(name))
        copy = tmp_path / "copy.json"
        copy.write_text(dump_scenario(scn))
        again = load_scenario(copy)
        assert again.params == scn.params
        assert again == scn

    def test_unknown_key_rejected(self, c1, tmp_path):
        data = json.loads(Path(c1).read_text())
        data["bandwith"] = 1.0  # typo
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(data))
        with pytest.raises(ScenarioError, match="bandwith"):
            load_scenario(bad)

    def test_missing_key_rejected(self, c1, tmp_path):
        data = json.loads(Path(c1).read_text())
        del data["n0"]
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(data))
        with pytest.raises(ScenarioError, match="n0"):
            load_scenario(bad)


class TestSolveCommand:
    def test_c1_table_row(self, c1, tmp_path, capsys):
        code = main(["solve", "--scenario", c1, "--out", str(tmp_path)])
        assert code == EXIT_OK
        rows = read_csv(tmp_path / "solution.csv")
        assert [*rows[0]] == _SOLUTION_HEADER
        by_proto = {r["protocol"]: r for r in rows}
        assert float(by_proto["aloha"]["e_tot_J"]) == pytest.approx(1.29, abs=0.02)
        assert float(by_proto["saloha"]["e_tot_J"]) == pytest.approx(1.92, abs=0.03)
        assert (tmp_path / "summary.txt").exists()
        out = capsys.readouterr().out
        assert "E_tot [J]" in out and "ALOHA" in out

    def test_infeasible_exit_code(self, c1, tmp_path):
        data = json.loads(Path(c1).read_text())
        data["q_min"] = 0.5
        bad = tmp_path / "q5.json"
        bad.write_text(json.dumps(data))
        code = main(["solve", "--scenario", str(bad), "--out", str(tmp_path)])
        assert code == EXIT_INFEASIBLE

    def test_deterministic_output(self, c1, tmp_path):
        main(["solve", "--scenario", c1, "--protocol", "aloha",
              "--grid-step", "0.01", "--out", str(tmp_path / "a")])
        main(["solve", "--scenario", c1, "--protocol", "aloha",
              "--grid-step", "0.01", "--out", str(tmp_path / "b")])
        assert (tmp_path / "a/solution.csv").read_bytes() == (
            tmp_path / "b/solution.csv"
        ).read_bytes()


class TestSweepCommand:
    def test_rho_axis(self, tmp_path):
        code = main([
            "sweep", "--scenario", scenario_path("default"), "--axis", "rho",
            "--range", "0:1:0.1", "--out", str(tmp_path),
        ])
        assert code == EXIT_OK
        rows = read_csv(tmp_path / "sweep.csv")
        assert len(rows) == 22  # 11 points x 2 protocols
        assert {r["feasible"] for r in rows} == {"true", "false"}
        infeasible = [r for r in rows if r["feasible"] == "false"]
        assert all(r["reason"] for r in infeasible)

    def test_n_fl_axis(self, c1, tmp_path):
        code = main([
            "sweep", "--scenario", c1, "--axis", "n_fl", "--range", "10:30:10",
            "--protocol", "aloha", "--grid-step", "0.005",
            "--out", str(tmp_path),
        ])
        assert code == EXIT_OK
        rows = read_csv(tmp_path / "sweep.csv")
        assert [r["value"] for r in rows] == ["10", "20", "30"]
        assert all(float(r["rho_star"]) > 0 for r in rows)

    def test_bad_range_usage_error(self, c1, tmp_path):
        code = main([
            "sweep", "--scenario", c1, "--axis", "lambda_fresh",
            "--range", "oops", "--out", str(tmp_path),
        ])
        assert code == EXIT_USAGE

    def test_empty_range_usage_error(self, c1, tmp_path):
        code = main([
            "sweep", "--scenario", c1, "--axis", "lambda_fresh",
            "--range", "10:1:5", "--out", str(tmp_path),
        ])
        assert code == EXIT_USAGE


class TestSimulateCommand:
    def test_small_point_passes_and_repeats(self, c1, tmp_path):
        args = [
            "simulate", "--scenario", c1, "--protocol", "saloha",
            "--lam", "1", "--rho", "0.5", "--rounds", "10", "--seed", "7",
        ]
        code = main(args + ["--out", str(tmp_path / "a")])
        assert code == EXIT_OK
        main(args + ["--out", str(tmp_path / "b")])
        assert (tmp_path / "a/sim.csv").read_bytes() == (
            tmp_path / "b/sim.csv"
        ).read_bytes()
        rows = read_csv(tmp_path / "a/sim.csv")
        assert {r["quantity"] for r in rows} >= {"p_success", "throughput"}

    def test_scenario_not_found_usage(self, tmp_path):
        assert main(["solve", "--scenario", str(tmp_path / "nope.json")]) == EXIT_USAGE
