"""
Suite d'invariants vérifiés à chaque pas d'une trajectoire : monotonie de
l'enveloppe, contenance dans l'enveloppe convexe, constance du leader et
verdicts de séparation.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd

from analysis.envelope import EnvelopeSeries
from analysis.separation import (
    SeparationScenario,
    SeparationStatus,
    check_separation_step,
    initial_separation_scenario,
)
from config import BOUNDARY_TOLERANCE, ENVELOPE_TOLERANCE
from dynamics.simulation import Trajectory
from utils.logger import get_logger

logger = get_logger(__name__)

ENVELOPE = "envelope_monotonicity"
CONVEX_HULL = "convex_hull"
LEADER = "leader_constant"
SEPARATION = "separation"


@dataclass
class InvariantCheck:
    """Compteurs d'un invariant ; first_failure décrit le premier échec"""

    name: str
    passed: int = 0
    failed: int = 0
    first_failure: Optional[Dict[str, Any]] = None
    outcomes: Dict[str, int] = field(default_factory=dict)

    def record(self, ok: bool, failure: Optional[Dict[str, Any]] = None) -> None:
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if self.first_failure is None:
            self.first_failure = failure

    def to_dict(self) -> Dict[str, Any]:
        document = {
            "passed": self.passed,
            "failed": self.failed,
            "first_failure": self.first_failure,
        }
        if self.outcomes:
            document["outcomes"] = dict(sorted(self.outcomes.items()))
        return document


@dataclass
class InvariantSummary:
    checks: Dict[str, InvariantCheck]
    steps: int

    @property
    def ok(self) -> bool:
        return all(check.failed == 0 for check in self.checks.values())

    @property
    def first_failure(self) -> Optional[Dict[str, Any]]:
        failures = [c.first_failure for c in self.checks.values() if c.first_failure is not None]
        if not failures:
            return None
        return min(failures, key=lambda f: f["t"])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "steps": self.steps,
            "first_failure": self.first_failure,
            "checks": {name: check.to_dict() for name, check in self.checks.items()},
        }


class InvariantValidator:
    """Vérification pas à pas des propriétés garanties par la règle de moyenne"""

    def __init__(self,
                 envelope_tol: float = ENVELOPE_TOLERANCE,
                 boundary_tol: float = BOUNDARY_TOLERANCE):
        self.envelope_tol = envelope_tol
        self.boundary_tol = boundary_tol
        self.validation_results: Dict[str, InvariantSummary] = {}

    def check_envelope(self, traj: Trajectory) -> InvariantCheck:
        """Monotonie sur tous les sommets, leader compris"""
        check = InvariantCheck(ENVELOPE)
        envelope = EnvelopeSeries(traj.headings.min(axis=1), traj.headings.max(axis=1))
        violations = set(envelope.monotonicity_violations(self.envelope_tol))
        for t in range(1, traj.steps + 1):
            check.record(t not in violations, {
                "check": ENVELOPE,
                "t": t,
                "lower": [float(envelope.lower[t - 1]), float(envelope.lower[t])],
                "upper": [float(envelope.upper[t - 1]), float(envelope.upper[t])],
            })
        return check

    def check_convex_hull(self, traj: Trajectory) -> InvariantCheck:
        """Chaque cap à t+1 reste dans [min, max] des caps à t"""
        check = InvariantCheck(CONVEX_HULL)
        headings = traj.headings
        for t in range(traj.steps):
            low, high = headings[t].min(), headings[t].max()
            outside = np.flatnonzero(
                (headings[t + 1] < low - self.envelope_tol) | (headings[t + 1] > high + self.envelope_tol)
            )
            check.record(outside.size == 0, {
                "check": CONVEX_HULL,
                "t": t + 1,
                "vertices": [int(k) + traj.first_vertex for k in outside],
            })
        return check

    def check_leader(self, traj: Trajectory) -> InvariantCheck:
        """Égalité bit à bit du cap du leader avec theta0"""
        check = InvariantCheck(LEADER)
        expected = np.float64(traj.theta0).tobytes()
        for t, value in enumerate(traj.headings[:, 0]):
            check.record(value.tobytes() == expected, {"check": LEADER, "t": t, "value": float(value)})
        return check

    def check_separation(self, traj: Trajectory,
                         scenarios: Iterable[SeparationScenario]) -> InvariantCheck:
        """Seul le statut `violated` compte comme échec"""
        check = InvariantCheck(SEPARATION)
        for scn in scenarios:
            for t in range(traj.steps):
                verdict = check_separation_step(
                    scn, traj.state_at(t), traj.graphs[t], traj.state_at(t + 1), self.boundary_tol
                )
                check.outcomes[verdict.status.value] = check.outcomes.get(verdict.status.value, 0) + 1
                if verdict.status is SeparationStatus.HYPOTHESIS_VIOLATED:
                    continue
                failure = {"check": SEPARATION, "t": t + 1, **verdict.to_dict()}
                check.record(not verdict.is_failure, failure)
        return check

    def validate(self, traj: Trajectory,
                 separation: Iterable[SeparationScenario] = (),
                 name: str = "trajectory") -> InvariantSummary:
        """
        Lance toutes les vérifications. Le découpage initial déduit de theta(0)
        est ajouté automatiquement aux scénarios de séparation fournis.
        """
        scenarios: List[SeparationScenario] = list(separation)
        automatic = initial_separation_scenario(traj.state_at(0))
        if automatic is not None and automatic not in scenarios:
            scenarios.append(automatic)

        checks = {
            ENVELOPE: self.check_envelope(traj),
            CONVEX_HULL: self.check_convex_hull(traj),
            SEPARATION: self.check_separation(traj, scenarios),
        }
        if traj.with_leader:
            checks[LEADER] = self.check_leader(traj)

        summary = InvariantSummary(checks, traj.steps)
        self.validation_results[name] = summary

        if summary.ok:
            logger.info(f"✅ Invariants respectés ({name}, {traj.steps} pas)")
        else:
            failure = summary.first_failure
            logger.error(f"❌ Invariant violé ({name}) : {failure['check']} à t = {failure['t']}")
        return summary

    def create_invariant_report(self) -> pd.DataFrame:
        """Une ligne par (trajectoire, invariant)"""
        rows = []
        for name, summary in self.validation_results.items():
            for check in summary.checks.values():
                rows.append({
                    "trajectory": name,
                    "invariant": check.name,
                    "passed": check.passed,
                    "failed": check.failed,
                    "first_failure_t": check.first_failure["t"] if check.first_failure else None,
                })
        return pd.DataFrame(rows, columns=["trajectory", "invariant", "passed", "failed", "first_failure_t"])
