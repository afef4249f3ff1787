"""Positions dans le plan et règle de voisinage géométrique d(i, j) <= r."""

from dataclasses import dataclass, replace
from typing import Union

import numpy as np
from scipy.spatial.distance import pdist, squareform

from dynamics.headings import HeadingState
from errors import DomainError
from graph.neighbor_graph import NeighborGraph, from_adjacency
from signals.switching import NeighborhoodKind


@dataclass(frozen=True, eq=False)
class PlanarState:
    positions: np.ndarray
    speed: Union[float, np.ndarray]
    radius: float
    neighborhood: NeighborhoodKind = NeighborhoodKind.CLOSED
    with_leader: bool = False

    def __post_init__(self):
        positions = np.array(self.positions, dtype=float)
        if positions.ndim != 2 or positions.shape[1] != 2 or positions.shape[0] < 1:
            raise DomainError(f"positions attendues de forme (n, 2), reçu {positions.shape}")
        speed = np.array(self.speed, dtype=float)
        if speed.ndim == 0:
            speed = np.full(positions.shape[0], float(speed))
        if speed.shape != (positions.shape[0],):
            raise DomainError("vecteur de vitesses de taille incompatible")
        if not np.all(speed > 0):
            raise DomainError("la vitesse v doit être > 0")
        if not self.radius > 0:
            raise DomainError(f"le rayon r doit être > 0 : {self.radius}")
        for array in (positions, speed):
            array.setflags(write=False)
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "speed", speed)
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "neighborhood", NeighborhoodKind(self.neighborhood))

    @property
    def size(self) -> int:
        return int(self.positions.shape[0])


def step_positions(planar: PlanarState, state: HeadingState) -> PlanarState:
    """x_i(t+1) = x_i(t) + v_i cos(theta_i(t)), y_i(t+1) = y_i(t) + v_i sin(theta_i(t))"""
    if planar.size != state.size or planar.with_leader != state.with_leader:
        raise DomainError(f"{planar.size} positions pour {state.size} caps")
    theta = state.values
    displacement = planar.speed[:, None] * np.column_stack([np.cos(theta), np.sin(theta)])
    return replace(planar, positions=planar.positions + displacement)


def geometric_neighbors(planar: PlanarState) -> NeighborGraph:
    """Arête (i, j) ssi d(i, j) <= r (disque fermé) ou d(i, j) < r (disque ouvert)"""
    distances = squareform(pdist(planar.positions))
    if planar.neighborhood is NeighborhoodKind.CLOSED:
        within = distances <= planar.radius
    else:
        within = distances < planar.radius
    np.fill_diagonal(within, False)
    return from_adjacency(within, planar.with_leader)
