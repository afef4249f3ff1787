"""Traduction d'un Scenario validé en objets de simulation."""

from typing import List, Optional, Sequence

import numpy as np

from analysis.separation import SeparationScenario
from dynamics.headings import HeadingState, LeaderConfig
from dynamics.planar import PlanarState
from dynamics.simulation import SimulationMode
from errors import DomainError, ScenarioError
from graph.neighbor_graph import (
    NeighborGraph,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    star_graph,
)
from scenarios.schema import EdgesGraph, GraphSpec, Scenario, SeededHeadings, ShapeGraph
from signals.generators import (
    BoundedIntervalsParams,
    SparseEventsParams,
    make_bounded_intervals,
    make_constant,
    make_geometric,
    make_periodic,
    make_random,
    make_sparse_events,
    make_trace,
)
from signals.switching import SwitchingSignal
from utils.random_streams import keyed_generator

_SHAPES = {
    "empty": empty_graph,
    "complete": complete_graph,
    "path": path_graph,
    "cycle": cycle_graph,
}


def is_leader(scn: Scenario) -> bool:
    return scn.mode is SimulationMode.LEADER


def build_graph(spec: GraphSpec, n: int, with_leader: bool = False) -> NeighborGraph:
    """Nom de forme, {"shape", "center"} ou {"edges"} -> NeighborGraph"""
    if isinstance(spec, EdgesGraph):
        return NeighborGraph(n, frozenset(spec.edges), with_leader)
    if isinstance(spec, ShapeGraph):
        shape, center = spec.shape, spec.center
    else:
        shape, center = spec, None

    if shape == "star":
        default = 0 if with_leader else 1
        return star_graph(n, center=default if center is None else center, with_leader=with_leader)
    if center is not None:
        raise DomainError(f"center n'a de sens que pour la forme star (forme {shape!r})")
    return _SHAPES[shape](n, with_leader=with_leader)


def _graphs(specs: Sequence[GraphSpec], n: int, with_leader: bool) -> List[NeighborGraph]:
    return [build_graph(spec, n, with_leader) for spec in specs]


def _build_signal(scn: Scenario) -> SwitchingSignal:
    spec, n, leader = scn.signal, scn.n, is_leader(scn)

    if spec.type == "constant":
        return make_constant(build_graph(spec.graph, n, leader))
    if spec.type == "periodic":
        phases = _graphs(spec.phases, n, leader)
        return make_periodic(n, len(phases), phases)
    if spec.type == "sparse":
        idle = build_graph(spec.idle_graph, n, leader) if spec.idle_graph is not None else None
        return make_sparse_events(n, SparseEventsParams(
            connect_times=spec.connect_times,
            event_graph=build_graph(spec.event_graph, n, leader),
            idle_graph=idle,
        ))
    if spec.type == "bounded_intervals":
        idle = build_graph(spec.idle_graph, n, leader) if spec.idle_graph is not None else None
        return make_bounded_intervals(n, BoundedIntervalsParams(
            bound=spec.bound,
            schedules=[_graphs(schedule, n, leader) for schedule in spec.schedules],
            starts=spec.starts,
            first=spec.first,
            stride=spec.stride,
            idle_graph=idle,
        ))
    if spec.type == "random":
        return make_random(n, spec.seed, spec.p, with_leader=leader)
    if spec.type == "trace":
        return make_trace(_graphs(spec.graphs, n, leader), spec.tail, n=n, with_leader=leader)
    return make_geometric(n, scn.geometry.r, scn.geometry.neighborhood, with_leader=leader)


def build_signal(scn: Scenario) -> SwitchingSignal:
    try:
        return _build_signal(scn)
    except DomainError as e:
        raise ScenarioError(f"signal: {e}") from e


def seeded_headings(spec: SeededHeadings, n: int) -> np.ndarray:
    """Un flux par agent : ajouter des agents ne modifie pas les tirages existants"""
    return np.array([keyed_generator(spec.seed, agent).uniform(spec.low, spec.high)
                     for agent in range(1, n + 1)])


def build_initial_state(scn: Scenario) -> HeadingState:
    if isinstance(scn.initial_headings, SeededHeadings):
        followers = seeded_headings(scn.initial_headings, scn.n)
    else:
        followers = np.array(scn.initial_headings, dtype=float)
    if is_leader(scn):
        return HeadingState.with_leader_heading(followers, scn.theta0)
    return HeadingState(followers)


def build_leader(scn: Scenario) -> Optional[LeaderConfig]:
    return LeaderConfig(scn.theta0) if is_leader(scn) else None


def build_planar(scn: Scenario) -> Optional[PlanarState]:
    geometry = scn.geometry
    if geometry is None:
        return None
    try:
        return PlanarState(
            positions=np.array(geometry.initial_positions, dtype=float),
            speed=np.array(geometry.v, dtype=float),
            radius=geometry.r,
            neighborhood=geometry.neighborhood,
            with_leader=is_leader(scn),
        )
    except DomainError as e:
        raise ScenarioError(f"geometry: {e}") from e


def build_separation(scn: Scenario) -> List[SeparationScenario]:
    """Scénarios de séparation déclarés ; n compte le leader éventuel"""
    size = scn.n + (1 if is_leader(scn) else 0)
    return [SeparationScenario(s.alpha, s.beta, s.gamma, size) for s in scn.separation]
