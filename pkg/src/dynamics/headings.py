"""
Règle du plus proche voisin : chaque agent prend la moyenne de son cap et
des caps de ses voisins. Les caps sont des réels, sans réduction modulo 2*pi.
"""

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from errors import DomainError
from graph.neighbor_graph import NeighborGraph


@dataclass(frozen=True, eq=False)
class HeadingState:
    """
    Vecteur des caps theta(t). En mode leader, la position 0 porte le cap du
    leader et les positions 1..n les suiveurs.
    """

    values: np.ndarray
    with_leader: bool = False

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise DomainError("le vecteur de caps doit être à une dimension")
        minimum = 2 if self.with_leader else 1
        if values.size < minimum:
            raise DomainError("au moins un agent suiveur est requis (n = 0 refusé)")
        if not np.all(np.isfinite(values)):
            raise DomainError("caps non finis")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "with_leader", bool(self.with_leader))

    @classmethod
    def with_leader_heading(cls, followers: Sequence[float], theta0: float) -> "HeadingState":
        return cls(np.concatenate([[float(theta0)], np.asarray(followers, dtype=float)]), True)

    @property
    def size(self) -> int:
        return int(self.values.size)

    @property
    def n(self) -> int:
        """Nombre de suiveurs"""
        return self.size - (1 if self.with_leader else 0)

    @property
    def followers(self) -> np.ndarray:
        return self.values[1:] if self.with_leader else self.values

    @property
    def first_vertex(self) -> int:
        return 0 if self.with_leader else 1

    def heading_of(self, vertex: int) -> float:
        return float(self.values[int(vertex) - self.first_vertex])

    def __repr__(self) -> str:
        return f"HeadingState({self.values.tolist()}, with_leader={self.with_leader})"


@dataclass(frozen=True)
class LeaderConfig:
    """Cap fixe theta0 de l'agent 0"""

    theta0: float

    def __post_init__(self):
        if not math.isfinite(self.theta0):
            raise DomainError(f"cap du leader non fini : {self.theta0}")
        object.__setattr__(self, "theta0", float(self.theta0))


HeadingUpdateRule = Callable[[HeadingState, NeighborGraph], HeadingState]


def closed_neighborhood_means(values: np.ndarray, adjacency: np.ndarray) -> np.ndarray:
    """
    Moyenne de chaque voisinage fermé {i} U N_i.

    Chaque ligne est sommée séquentiellement dans l'ordre croissant de ses
    valeurs : le résultat ne dépend que du multiensemble du voisinage, ni de
    la numérotation des agents ni du reste du graphe. La moyenne est ensuite
    bornée par le min et le max des valeurs moyennées.

    Accepte des axes de lot en tête : values (..., k), adjacency (..., k, k).
    """
    size = values.shape[-1]
    closed = adjacency | np.eye(size, dtype=bool)
    counts = closed.sum(axis=-1)
    # membres triés en tête de ligne, non-membres (inf) en queue
    ordered = np.sort(np.where(closed, values[..., None, :], np.inf), axis=-1)
    members = np.isfinite(ordered)
    sums = np.cumsum(np.where(members, ordered, 0.0), axis=-1)[..., -1]
    lower = ordered[..., 0]
    upper = np.take_along_axis(ordered, (counts - 1)[..., None], axis=-1)[..., 0]
    return np.clip(sums / counts, lower, upper)


def _check_sizes(state: HeadingState, g: NeighborGraph) -> None:
    if state.with_leader != g.with_leader or state.size != g.order:
        raise DomainError(
            f"graphe sur {g.vertex_range_label} incompatible avec un état de {state.size} caps"
            + (" (leader)" if state.with_leader else "")
        )


def step_headings(state: HeadingState, g: NeighborGraph) -> HeadingState:
    """theta_i(t+1) = (theta_i(t) + somme des theta_j(t), j voisin) / (1 + n_i(t))"""
    if state.with_leader:
        raise DomainError("état avec leader : utiliser step_headings_leader")
    _check_sizes(state, g)
    return HeadingState(closed_neighborhood_means(state.values, g.adjacency))


def step_headings_leader(state: HeadingState, leader: LeaderConfig, g: NeighborGraph) -> HeadingState:
    """Même moyenne pour les suiveurs (le leader compte comme voisin) ; le leader garde theta0"""
    if not state.with_leader:
        raise DomainError("état sans leader : utiliser step_headings")
    _check_sizes(state, g)
    values = closed_neighborhood_means(state.values, g.adjacency)
    values[0] = leader.theta0
    return HeadingState(values, True)
