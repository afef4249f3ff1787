"""
Boucle de simulation : itère la règle de mise à jour T fois et enregistre
chaque graphe effectivement utilisé.
"""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
import pandas as pd

from config import FLOAT_FORMAT
from dynamics.headings import (
    HeadingState,
    HeadingUpdateRule,
    LeaderConfig,
    step_headings,
    step_headings_leader,
)
from dynamics.planar import PlanarState, geometric_neighbors, step_positions
from errors import ConfigurationError, DomainError
from graph.neighbor_graph import NeighborGraph
from signals.generators import make_trace
from signals.switching import GeometricSignal, SwitchingSignal, TailPolicy, TraceSignal
from utils.logger import get_logger

logger = get_logger(__name__)


class SimulationMode(str, Enum):
    LEADERLESS = "leaderless"
    LEADER = "leader"


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Orbite enregistrée : headings[t] pour t = 0..T, graphs[t] pour t = 0..T-1,
    positions[t] en mode géométrique (ou si un état plan est fourni).
    """

    headings: np.ndarray
    graphs: Tuple[NeighborGraph, ...]
    mode: SimulationMode
    n: int
    signal: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    positions: Optional[np.ndarray] = None
    theta0: Optional[float] = None

    def __post_init__(self):
        if self.headings.shape[0] != len(self.graphs) + 1:
            raise DomainError("trajectoire incohérente : T+1 caps pour T graphes attendus")

    @property
    def steps(self) -> int:
        return len(self.graphs)

    @property
    def with_leader(self) -> bool:
        return self.mode is SimulationMode.LEADER

    @property
    def first_vertex(self) -> int:
        return 0 if self.with_leader else 1

    @property
    def followers(self) -> np.ndarray:
        """Caps des suiveurs uniquement (T+1, n)"""
        return self.headings[:, 1:] if self.with_leader else self.headings

    @property
    def spread(self) -> np.ndarray:
        followers = self.followers
        return followers.max(axis=1) - followers.min(axis=1)

    def state_at(self, t: int) -> HeadingState:
        return HeadingState(self.headings[t], self.with_leader)

    def column_names(self):
        return [f"theta_{v}" for v in range(self.first_vertex, self.n + 1)]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.headings, columns=self.column_names())
        frame.insert(0, "t", np.arange(self.headings.shape[0]))
        return frame

    def write_csv(self, path: Union[str, Path]) -> Path:
        """En-tête t,theta_1..theta_n (theta_0 en tête en mode leader), 17 chiffres significatifs"""
        path = Path(path)
        self.to_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return path

    def positions_frame(self) -> Optional[pd.DataFrame]:
        if self.positions is None:
            return None
        records = {"t": np.arange(self.positions.shape[0])}
        for k, v in enumerate(range(self.first_vertex, self.n + 1)):
            records[f"x_{v}"] = self.positions[:, k, 0]
            records[f"y_{v}"] = self.positions[:, k, 1]
        return pd.DataFrame(records)

    def as_trace_signal(self, tail: TailPolicy = TailPolicy.HOLD_LAST) -> TraceSignal:
        """Graphes enregistrés vus comme une trace (utile en mode géométrique)"""
        if not self.graphs:
            raise DomainError("trajectoire sans pas : aucun graphe enregistré")
        return make_trace(self.graphs, tail)

    def metadata(self) -> Dict[str, Any]:
        return {
            "mode": self.mode.value,
            "n": self.n,
            "steps": self.steps,
            "signal": self.signal,
            "seed": self.seed,
            "theta0": self.theta0,
        }


def simulate(mode: Union[str, SimulationMode],
             initial: HeadingState,
             sig: SwitchingSignal,
             steps: int,
             planar: Optional[PlanarState] = None,
             leader: Optional[LeaderConfig] = None,
             update_rule: Optional[HeadingUpdateRule] = None,
             seed: Optional[int] = None) -> Trajectory:
    """
    Itère la règle du plus proche voisin (ou sa variante leader) `steps` fois.

    En mode géométrique, le graphe de l'instant t est calculé à partir des
    positions de l'instant t, avant la mise à jour des caps et des positions.
    """
    mode = SimulationMode(mode)
    steps = int(steps)
    if steps < 0:
        raise DomainError(f"nombre de pas négatif : {steps}")

    if mode is SimulationMode.LEADER:
        if leader is None:
            raise ConfigurationError("mode leader sans LeaderConfig (theta0)")
        if not initial.with_leader:
            raise ConfigurationError("mode leader : l'état initial doit inclure le leader")
        values = initial.values.copy()
        values[0] = leader.theta0
        initial = HeadingState(values, True)
    elif leader is not None or initial.with_leader:
        raise ConfigurationError("mode sans leader : LeaderConfig et état avec leader interdits")

    if sig.n != initial.n or sig.with_leader != initial.with_leader:
        raise DomainError(f"signal sur {sig.n} agents, état initial sur {initial.n}")

    geometric = isinstance(sig, GeometricSignal)
    if geometric:
        if planar is None:
            raise ConfigurationError("signal géométrique sans état plan (positions, r, v)")
        if planar.radius != sig.radius or planar.neighborhood is not sig.neighborhood:
            raise ConfigurationError("rayon ou type de voisinage différent entre signal et état plan")
    if planar is not None and (planar.size != initial.size or planar.with_leader != initial.with_leader):
        raise DomainError(f"{planar.size} positions pour {initial.size} caps")

    if update_rule is None:
        if mode is SimulationMode.LEADER:
            def update_rule(state, g):
                return step_headings_leader(state, leader, g)
        else:
            update_rule = step_headings

    headings = np.empty((steps + 1, initial.size))
    headings[0] = initial.values
    positions = None
    if planar is not None:
        positions = np.empty((steps + 1, planar.size, 2))
        positions[0] = planar.positions

    graphs = []
    state = initial
    for t in range(steps):
        g = geometric_neighbors(planar) if geometric else sig.at(t)
        next_state = update_rule(state, g)
        if planar is not None:
            planar = step_positions(planar, state)
            positions[t + 1] = planar.positions
        graphs.append(g)
        state = next_state
        headings[t + 1] = state.values

    logger.debug(f"Simulation {mode.value} : {steps} pas, signal {sig.variant}")
    headings.setflags(write=False)
    return Trajectory(
        headings=headings,
        graphs=tuple(graphs),
        mode=mode,
        n=initial.n,
        signal=sig.describe(),
        seed=seed,
        positions=positions,
        theta0=leader.theta0 if leader is not None else None,
    )
