import json

import pandas as pd
import pytest

from dynamics.headings import HeadingState
from graph.neighbor_graph import empty_graph, star_graph
from scenarios import parse_scenario
from vicsek_runner import (
    EXIT_ERROR,
    EXIT_INVARIANT_VIOLATION,
    EXIT_OK,
    VicsekExperimentRunner,
    format_graph_log,
)

import main as cli


def summing_rule(state, g):
    """Règle corrompue : somme au lieu de moyenne"""
    return HeadingState(state.values + g.adjacency @ state.values)


@pytest.fixture
def consensus_scenario():
    return parse_scenario({
        "name": "consensus-initial",
        "n": 3,
        "initial_headings": [1.5, 1.5, 1.5],
        "signal": {"type": "constant", "graph": "path"},
        "steps": 20,
    })


@pytest.fixture
def complete_scenario():
    return parse_scenario({
        "name": "complete-short",
        "n": 3,
        "initial_headings": [0.5, 1.0, 1.5],
        "signal": {"type": "constant", "graph": "complete"},
        "steps": 3,
    })


@pytest.fixture
def runner(tmp_path):
    return VicsekExperimentRunner(tmp_path / "out")


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


class TestRunScenario:
    def test_outputs(self, runner, consensus_scenario):
        assert runner.run_scenario(consensus_scenario) == EXIT_OK
        directory = runner.output_dir / "consensus-initial"
        report = read_json(directory / "report.json")
        assert report["converged"] is True
        assert report["steps_to_tolerance"] == 0
        metadata = read_json(directory / "metadata.json")
        assert metadata["finally_jointly_connected"] == "proven_yes"
        assert metadata["limit_graph"] == {"edges": [[1, 2], [2, 3]], "exact": True}
        assert not (directory / "graphs.log").exists()
        assert not (directory / "positions.csv").exists()

    def test_zero_steps(self, runner, consensus_scenario):
        assert runner.run_scenario(consensus_scenario.with_overrides(steps=0)) == EXIT_OK
        frame = pd.read_csv(runner.output_dir / "consensus-initial" / "trajectory.csv")
        assert frame["t"].tolist() == [0]
        assert list(frame.columns) == ["t", "theta_1", "theta_2", "theta_3"]

    def test_repeat_runs_are_byte_identical(self, tmp_path):
        scn = parse_scenario({
            "name": "random-repeat",
            "n": 5,
            "initial_headings": {"seed": 3},
            "signal": {"type": "random", "seed": 9, "p": 0.4},
            "steps": 200,
        })
        first = VicsekExperimentRunner(tmp_path / "a")
        second = VicsekExperimentRunner(tmp_path / "b")
        assert first.run_scenario(scn) == second.run_scenario(scn) == EXIT_OK
        for name in ("trajectory.csv", "report.json", "metadata.json"):
            a = (tmp_path / "a" / "random-repeat" / name).read_bytes()
            b = (tmp_path / "b" / "random-repeat" / name).read_bytes()
            assert a == b

    def test_geometric_outputs(self, runner):
        scn = parse_scenario({
            "name": "geo",
            "n": 2,
            "initial_headings": [0.0, 0.0],
            "signal": {"type": "geometric"},
            "geometry": {"r": 1.0, "v": 1.0, "initial_positions": [[0.0, 0.0], [0.5, 0.0]]},
            "steps": 4,
        })
        assert runner.run_scenario(scn) == EXIT_OK
        directory = runner.output_dir / "geo"
        positions = pd.read_csv(directory / "positions.csv")
        assert positions["x_2"].tolist() == [0.5, 1.5, 2.5, 3.5, 4.5]
        metadata = read_json(directory / "metadata.json")
        assert metadata["finally_jointly_connected"] == "unknown_at_horizon"
        assert metadata["limit_graph"]["exact"] is False

    def test_graph_log(self, tmp_path):
        scn = parse_scenario({
            "name": "sparse-log",
            "n": 3,
            "initial_headings": [0.0, 1.0, 2.0],
            "signal": {"type": "sparse", "connect_times": "powers_of_two", "event_graph": "star"},
            "steps": 5,
        })
        runner = VicsekExperimentRunner(tmp_path, graph_log=True)
        assert runner.run_scenario(scn) == EXIT_OK
        text = (tmp_path / "sparse-log" / "graphs.log").read_text(encoding="utf-8")
        assert text == (
            "t=0\nn=3\n"
            "t=1-2\nn=3\n1 2\n1 3\n"
            "t=3\nn=3\n"
            "t=4\nn=3\n1 2\n1 3\n"
        )

    def test_domain_error_is_exit_error(self, runner):
        scn = parse_scenario({
            "name": "bad-edge",
            "n": 3,
            "initial_headings": [0.0, 1.0, 2.0],
            "signal": {"type": "constant", "graph": {"edges": [[1, 7]]}},
            "steps": 5,
        })
        assert runner.run_scenario(scn) == EXIT_ERROR


def test_format_graph_log_run_lengths():
    graphs = [empty_graph(2)] * 3 + [star_graph(2)]
    assert format_graph_log(graphs) == "t=0-2\nn=2\nt=3\nn=2\n1 2\n"
    assert format_graph_log([]) == ""


class TestVerify:
    def test_library_style_scenario_passes(self, runner, complete_scenario):
        assert runner.verify_scenario(complete_scenario) == EXIT_OK
        invariants = read_json(runner.output_dir / "complete-short" / "invariants.json")
        assert invariants["ok"] is True
        assert invariants["checks"]["envelope_monotonicity"]["passed"] == 3

    def test_summing_rule_breaks_envelope_at_first_step(self, runner, complete_scenario):
        summary = runner.verify_invariants(complete_scenario, update_rule=summing_rule)
        assert not summary.ok
        assert summary.checks["envelope_monotonicity"].first_failure["t"] == 1
        assert summary.first_failure["t"] == 1
        assert runner.verify_scenario(complete_scenario, update_rule=summing_rule) == EXIT_INVARIANT_VIOLATION

    def test_single_agent_is_vacuous(self, runner):
        scn = parse_scenario({
            "name": "lonely",
            "n": 1,
            "initial_headings": [2.0],
            "signal": {"type": "constant", "graph": "empty"},
            "steps": 10,
        })
        summary = runner.verify_invariants(scn)
        assert summary.ok
        assert summary.checks["separation"].passed == 0

    def test_leader_scenario(self, runner):
        scn = parse_scenario({
            "name": "leader-short",
            "n": 2,
            "mode": "leader",
            "theta0": 0.3,
            "initial_headings": [1.0, 2.0],
            "signal": {"type": "constant", "graph": "path"},
            "steps": 50,
        })
        summary = runner.verify_invariants(scn)
        assert summary.ok
        assert summary.checks["leader_constant"].passed == 51
        assert summary.checks["envelope_monotonicity"].passed == 50
        assert runner.verify_scenario(scn) == EXIT_OK

    def test_large_group_does_not_overflow(self, runner):
        scn = parse_scenario({
            "name": "large-path",
            "n": 150,
            "initial_headings": [0.01 * k for k in range(150)],
            "signal": {"type": "constant", "graph": "path"},
            "steps": 3,
        })
        assert runner.verify_scenario(scn) == EXIT_OK
        invariants = read_json(runner.output_dir / "large-path" / "invariants.json")
        assert invariants["checks"]["separation"]["failed"] == 0


class TestBatch:
    def write(self, directory, name, **fields):
        document = {
            "name": name,
            "n": 2,
            "initial_headings": [0.0, 1.0],
            "signal": {"type": "constant", "graph": "path"},
            "steps": 5,
        }
        document.update(fields)
        (directory / f"{name}.json").write_text(json.dumps(document), encoding="utf-8")

    def test_worst_code_wins(self, tmp_path):
        scenarios = tmp_path / "scenarios"
        scenarios.mkdir()
        self.write(scenarios, "good")
        self.write(scenarios, "broken", colour="red")
        runner = VicsekExperimentRunner(tmp_path / "out")
        assert runner.run_batch(scenarios) == EXIT_ERROR
        assert (tmp_path / "out" / "good" / "trajectory.csv").exists()

    def test_overrides_apply(self, tmp_path):
        scenarios = tmp_path / "scenarios"
        scenarios.mkdir()
        self.write(scenarios, "short")
        runner = VicsekExperimentRunner(tmp_path / "out", steps=2)
        assert runner.run_batch(scenarios, verify=True) == EXIT_OK
        frame = pd.read_csv(tmp_path / "out" / "short" / "trajectory.csv")
        assert frame["t"].tolist() == [0, 1, 2]

    def test_missing_directory(self, tmp_path):
        assert VicsekExperimentRunner(tmp_path).run_batch(tmp_path / "absent") == EXIT_ERROR


class TestCommandLine:
    def test_run_library_scenario(self, tmp_path):
        code = cli.main(["run", "control-empty", "--out", str(tmp_path), "--steps", "0"])
        assert code == EXIT_OK
        lines = (tmp_path / "control-empty" / "trajectory.csv").read_text().splitlines()
        assert len(lines) == 2

    def test_verify_library_scenario(self, tmp_path):
        assert cli.main(["verify", "remark-two-components", "--out", str(tmp_path)]) == EXIT_OK
        assert (tmp_path / "remark-two-components" / "invariants.json").exists()

    def test_scenarios_listing(self, capsys):
        assert cli.main(["scenarios"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "thm1-sparse-star" in out
        assert "leader-star" in out

    def test_missing_scenario(self, tmp_path):
        assert cli.main(["run", "--out", str(tmp_path)]) == EXIT_ERROR
        assert cli.main(["run", "no-such-scenario", "--out", str(tmp_path)]) == EXIT_ERROR

    def test_batch_and_single_are_exclusive(self, tmp_path):
        code = cli.main(["run", "control-empty", "--batch", str(tmp_path), "--out", str(tmp_path)])
        assert code == EXIT_ERROR
