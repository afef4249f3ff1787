"""
Orchestrateur des expériences : scénario -> simulation -> analyses -> fichiers
de sortie sous <out>/<nom du scénario>/.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from itertools import groupby
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from analysis.consensus import build_report
from analysis.envelope import tail_bounds
from config import FLOAT_FORMAT, OUTPUT_DIR, TAIL_FRACTION
from dynamics.headings import HeadingUpdateRule
from dynamics.simulation import Trajectory, simulate
from errors import VicsekError
from graph.neighbor_graph import NeighborGraph, to_edge_list
from scenarios.builder import (
    build_initial_state,
    build_leader,
    build_planar,
    build_separation,
    build_signal,
)
from scenarios.library import ScenarioEntry, list_scenarios, load_scenario, scenario_files
from scenarios.schema import Scenario
from signals.limits import JointConnectivity, LimitGraph, limit_graph, verify_finally_jointly_connected
from signals.switching import GeometricSignal, SwitchingSignal
from utils.logger import get_logger
from validators.invariants import InvariantSummary, InvariantValidator

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INVARIANT_VIOLATION = 1
EXIT_ERROR = 2


def format_graph_log(graphs: Sequence[NeighborGraph]) -> str:
    """
    Un bloc par suite de graphes identiques : ligne "t=<t>" ou "t=<début>-<fin>"
    (bornes incluses), puis la forme liste d'arêtes du graphe.
    """
    blocks = []
    t = 0
    for g, run in groupby(graphs):
        length = sum(1 for _ in run)
        label = f"t={t}" if length == 1 else f"t={t}-{t + length - 1}"
        blocks.append(label + "\n" + to_edge_list(g))
        t += length
    return "".join(blocks)


def _write_json(path: Path, document: Dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(document, f, indent=2, ensure_ascii=False)
        f.write("\n")


class VicsekExperimentRunner:
    """Exécution des scénarios et écriture des résultats"""

    def __init__(self, output_dir: Union[str, Path] = OUTPUT_DIR, graph_log: bool = False,
                 steps: Optional[int] = None, tolerance: Optional[float] = None):
        self.output_dir = Path(output_dir)
        self.graph_log = graph_log
        # surcharges --steps / --tolerance appliquées à chaque scénario chargé
        self.steps = steps
        self.tolerance = tolerance

    def scenario_directory(self, scn: Scenario) -> Path:
        directory = self.output_dir / scn.name
        directory.mkdir(parents=True, exist_ok=True)
        return directory

    def simulate_scenario(self, scn: Scenario,
                          update_rule: Optional[HeadingUpdateRule] = None) -> Tuple[SwitchingSignal, Trajectory]:
        sig = build_signal(scn)
        traj = simulate(
            scn.mode,
            build_initial_state(scn),
            sig,
            scn.steps,
            planar=build_planar(scn),
            leader=build_leader(scn),
            update_rule=update_rule,
            seed=getattr(scn.signal, "seed", None),
        )
        return sig, traj

    def estimate_limit(self, sig: SwitchingSignal,
                       traj: Trajectory) -> Tuple[Optional[LimitGraph], JointConnectivity]:
        """sigma(infini) et verdict de connectivité ; en mode géométrique, à partir des graphes enregistrés"""
        horizon = max(traj.steps, 1)
        if isinstance(sig, GeometricSignal):
            if traj.steps == 0:
                return None, JointConnectivity.UNKNOWN_AT_HORIZON
            return limit_graph(traj.as_trace_signal(), horizon), JointConnectivity.UNKNOWN_AT_HORIZON
        return limit_graph(sig, horizon), verify_finally_jointly_connected(sig, horizon)

    def build_metadata(self, scn: Scenario, traj: Trajectory,
                       limit: Optional[LimitGraph], verdict: JointConnectivity) -> Dict[str, Any]:
        bounds = tail_bounds(traj, TAIL_FRACTION)
        metadata = traj.metadata()
        metadata.update({
            "scenario": scn.name,
            "exercises": scn.exercises,
            "tolerance": scn.tolerance,
            "limit_graph": None if limit is None else {
                "edges": [list(e) for e in limit.graph.sorted_edges()],
                "exact": limit.exact,
            },
            "finally_jointly_connected": verdict.value,
            "tail_bounds": {
                "window_start": bounds.window_start,
                "window_length": bounds.window_length,
                "m_hat": bounds.m_overall,
                "M_hat": bounds.M_overall,
                "agents": {
                    str(agent): [float(m), float(M)]
                    for agent, m, M in zip(bounds.agents, bounds.m_hat, bounds.M_hat)
                },
            },
        })
        return metadata

    def write_outputs(self, scn: Scenario, sig: SwitchingSignal, traj: Trajectory) -> Path:
        directory = self.scenario_directory(scn)
        limit, verdict = self.estimate_limit(sig, traj)
        report = build_report(traj, scn.tolerance, limit.graph if limit is not None else None)

        traj.write_csv(directory / "trajectory.csv")
        _write_json(directory / "report.json", report.to_dict())
        _write_json(directory / "metadata.json", self.build_metadata(scn, traj, limit, verdict))

        positions = traj.positions_frame()
        if positions is not None:
            positions.to_csv(directory / "positions.csv", index=False,
                             float_format=FLOAT_FORMAT, lineterminator="\n")
        if self.graph_log:
            with open(directory / "graphs.log", "w", encoding="utf-8", newline="\n") as f:
                f.write(format_graph_log(traj.graphs))

        status = "consensus" if report.converged else "pas de consensus"
        logger.info(f"📊 {scn.name} : {status} (écart final {report.M_estimate - report.m_estimate:.3g})")
        return directory

    def run_scenario(self, scn: Scenario) -> int:
        """0 si l'exécution s'est bien déroulée, quel que soit le verdict de convergence"""
        logger.info(f"🚀 Scénario {scn.name} : {scn.n} agents, {scn.steps} pas, signal {scn.signal.type}")
        try:
            sig, traj = self.simulate_scenario(scn)
            directory = self.write_outputs(scn, sig, traj)
        except OSError as e:
            logger.error(f"❌ {scn.name} : écriture impossible ({e.filename}) : {e.strerror}")
            return EXIT_ERROR
        except VicsekError as e:
            logger.error(f"❌ {scn.name} : {e}")
            return EXIT_ERROR
        logger.info(f"✅ Résultats écrits dans {directory}")
        return EXIT_OK

    def verify_invariants(self, scn: Scenario,
                          update_rule: Optional[HeadingUpdateRule] = None) -> InvariantSummary:
        """Simule puis vérifie les invariants à chaque pas ; écrit aussi les sorties usuelles"""
        sig, traj = self.simulate_scenario(scn, update_rule)
        directory = self.write_outputs(scn, sig, traj)
        summary = InvariantValidator().validate(traj, build_separation(scn), name=scn.name)
        _write_json(directory / "invariants.json", summary.to_dict())
        return summary

    def verify_scenario(self, scn: Scenario,
                        update_rule: Optional[HeadingUpdateRule] = None) -> int:
        try:
            summary = self.verify_invariants(scn, update_rule)
        except OSError as e:
            logger.error(f"❌ {scn.name} : écriture impossible ({e.filename}) : {e.strerror}")
            return EXIT_ERROR
        except VicsekError as e:
            logger.error(f"❌ {scn.name} : {e}")
            return EXIT_ERROR
        return EXIT_OK if summary.ok else EXIT_INVARIANT_VIOLATION

    def run_file(self, path: Union[str, Path], verify: bool = False) -> int:
        try:
            scn = load_scenario(path).with_overrides(self.steps, self.tolerance)
        except VicsekError as e:
            logger.error(f"❌ {e}")
            return EXIT_ERROR
        return self.verify_scenario(scn) if verify else self.run_scenario(scn)

    def run_batch(self, directory: Union[str, Path], workers: int = 1, verify: bool = False) -> int:
        """Tous les *.json du répertoire ; le pire code de sortie est renvoyé"""
        try:
            files = scenario_files(directory)
        except VicsekError as e:
            logger.error(f"❌ {e}")
            return EXIT_ERROR
        if not files:
            logger.warning(f"⚠️ Aucun scénario dans {directory}")
            return EXIT_OK

        logger.info(f"🚀 Lot de {len(files)} scénarios ({workers} processus)")
        if workers <= 1:
            codes = [self.run_file(path, verify) for path in tqdm(files, desc="Scénarios")]
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                jobs = pool.map(
                    _run_file_job,
                    [(str(path), str(self.output_dir), self.graph_log, self.steps, self.tolerance, verify)
                     for path in files],
                )
                codes = list(tqdm(jobs, total=len(files), desc="Scénarios"))

        failures = sum(1 for code in codes if code != EXIT_OK)
        if failures:
            logger.warning(f"⚠️ {failures}/{len(files)} scénarios en échec")
        else:
            logger.info(f"✅ {len(files)} scénarios exécutés")
        return max(codes)

    def list_scenarios(self, directory: Optional[Union[str, Path]] = None) -> List[ScenarioEntry]:
        return list_scenarios(directory)


def _run_file_job(job: Tuple[str, str, bool, Optional[int], Optional[float], bool]) -> int:
    path, output_dir, graph_log, steps, tolerance, verify = job
    return VicsekExperimentRunner(output_dir, graph_log, steps, tolerance).run_file(path, verify)
