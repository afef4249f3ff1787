"""
Détection du consensus à partir de l'écart max - min, globalement ou par
composante connexe de sigma(infini).
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import CONSENSUS_TOLERANCE
from dynamics.simulation import Trajectory
from errors import DomainError
from graph.neighbor_graph import NeighborGraph, connected_components

NOT_REACHED = "not reached"


@dataclass
class ConvergenceReport:
    """
    converged : l'écart reste <= tolerance du pas steps_to_tolerance jusqu'à la fin.
    theta_ss : milieu de l'enveloppe finale ; l'écart résiduel en est la barre d'erreur.
    tail_window : nombre d'enregistrements finaux sur lesquels la tolérance tient.
    """

    converged: bool
    theta_ss: float
    steps_to_tolerance: Optional[int]
    m_estimate: float
    M_estimate: float
    tolerance: float
    tail_window: int
    vertices: Optional[Tuple[int, ...]] = None
    components: List["ConvergenceReport"] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        document = {
            "converged": self.converged,
            "theta_ss": self.theta_ss,
            "steps_to_tolerance": NOT_REACHED if self.steps_to_tolerance is None else self.steps_to_tolerance,
            "m_estimate": self.m_estimate,
            "M_estimate": self.M_estimate,
            "tolerance": self.tolerance,
            "tail_window": self.tail_window,
        }
        if self.vertices is not None:
            document["vertices"] = list(self.vertices)
        else:
            document["components"] = [c.to_dict() for c in self.components]
        return document


def _report_from_columns(columns: np.ndarray, tolerance: float,
                         vertices: Optional[Sequence[int]] = None) -> ConvergenceReport:
    lower = columns.min(axis=1)
    upper = columns.max(axis=1)
    within = (upper - lower) <= tolerance

    if within[-1]:
        outside = np.flatnonzero(~within)
        first = int(outside[-1]) + 1 if outside.size else 0
        converged, steps, tail_window = True, first, int(within.size - first)
    else:
        converged, steps, tail_window = False, None, 0

    return ConvergenceReport(
        converged=converged,
        theta_ss=float((lower[-1] + upper[-1]) / 2),
        steps_to_tolerance=steps,
        m_estimate=float(lower[-1]),
        M_estimate=float(upper[-1]),
        tolerance=float(tolerance),
        tail_window=tail_window,
        vertices=tuple(vertices) if vertices is not None else None,
    )


def _check_tolerance(tolerance: float) -> None:
    if not tolerance > 0:
        raise DomainError(f"tolérance doit être > 0 : {tolerance}")


def detect_consensus(traj: Trajectory, tolerance: float) -> ConvergenceReport:
    """Consensus des suiveurs sur toute la trajectoire"""
    _check_tolerance(tolerance)
    return _report_from_columns(traj.followers, tolerance)


def component_limits(traj: Trajectory, limit: NeighborGraph,
                     tolerance: float = CONSENSUS_TOLERANCE) -> List[ConvergenceReport]:
    """Un rapport par composante connexe de sigma(infini)"""
    _check_tolerance(tolerance)
    if limit.n != traj.n or limit.with_leader != traj.with_leader:
        raise DomainError(
            f"graphe limite sur {limit.vertex_range_label} incompatible avec {traj.n} agents"
            + (" + leader" if traj.with_leader else "")
        )

    reports = []
    for block in connected_components(limit).blocks:
        vertices = sorted(block)
        if traj.with_leader and len(vertices) > 1:
            # colonne du leader exclue, comme pour l'enveloppe globale
            vertices = [v for v in vertices if v != 0]
        columns = traj.headings[:, [v - traj.first_vertex for v in vertices]]
        reports.append(_report_from_columns(columns, tolerance, vertices))
    return reports


def build_report(traj: Trajectory, tolerance: float,
                 limit: Optional[NeighborGraph] = None) -> ConvergenceReport:
    """Rapport global, complété des limites par composante si sigma(infini) est fourni"""
    report = detect_consensus(traj, tolerance)
    if limit is not None:
        report.components = component_limits(traj, limit, tolerance)
    return report
