"""
Générateurs de signaux couvrant chaque régime de connectivité :
périodique, intervalles bornés, événements épars (finalement conjointement
connexe), limite déconnectée, traces explicites et tirages aléatoires.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from errors import DomainError
from graph.neighbor_graph import NeighborGraph, empty_graph, is_connected
from signals.switching import (
    POWERS_OF_TWO,
    BoundedIntervalsSignal,
    ConstantSignal,
    GeometricSignal,
    NeighborhoodKind,
    PeriodicSignal,
    RandomSignal,
    SparseEventsSignal,
    TailPolicy,
    TraceSignal,
)
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SparseEventsParams:
    connect_times: Union[str, Sequence[int]]
    event_graph: NeighborGraph
    idle_graph: Optional[NeighborGraph] = None


@dataclass(frozen=True)
class BoundedIntervalsParams:
    bound: int
    schedules: Sequence[Sequence[NeighborGraph]]
    starts: Optional[Sequence[int]] = None
    first: Optional[int] = None
    stride: Optional[int] = None
    idle_graph: Optional[NeighborGraph] = None


def _check_agent_count(n: int, graphs: Sequence[NeighborGraph]) -> bool:
    """Vérifie n sur chaque graphe et renvoie le drapeau leader commun"""
    if int(n) < 1:
        raise DomainError(f"nombre d'agents invalide : {n}")
    with_leader = graphs[0].with_leader if graphs else False
    for g in graphs:
        if g.n != n or g.with_leader != with_leader:
            raise DomainError(f"graphe sur {g.vertex_range_label} incompatible avec n={n}")
    return with_leader


def make_constant(g: NeighborGraph) -> ConstantSignal:
    return ConstantSignal(g.n, g.with_leader, g)


def make_trace(graphs: Sequence[NeighborGraph], tail: Union[str, TailPolicy],
               n: Optional[int] = None, with_leader: bool = False) -> TraceSignal:
    """Trace explicite ; la politique de queue est obligatoire"""
    graphs = tuple(graphs)
    if graphs:
        n = graphs[0].n if n is None else n
        with_leader = _check_agent_count(n, graphs)
    elif n is None:
        raise DomainError("trace vide : préciser n")
    return TraceSignal(int(n), with_leader, graphs, TailPolicy(tail))


def make_periodic(n: int, period: int, phases: Sequence[NeighborGraph]) -> PeriodicSignal:
    """sigma(t) = phases[t mod T] ; signale si l'union sur une période est connexe"""
    phases = tuple(phases)
    if int(period) < 1:
        raise DomainError(f"période invalide : {period}")
    if len(phases) != period:
        raise DomainError(f"{len(phases)} phases fournies pour une période de {period}")
    with_leader = _check_agent_count(n, phases)
    signal = PeriodicSignal(int(n), with_leader, phases)

    if signal.period_union_connected:
        logger.info(f"✅ Signal périodique T={period} : union sur une période connexe")
    else:
        logger.warning(f"⚠️ Signal périodique T={period} : union sur une période NON connexe")
    return signal


def make_sparse_events(n: int, params: SparseEventsParams) -> SparseEventsSignal:
    """event_graph aux instants de connexion, idle_graph ailleurs"""
    event = params.event_graph
    with_leader = _check_agent_count(n, [event])
    idle = params.idle_graph if params.idle_graph is not None else empty_graph(n, with_leader)
    _check_agent_count(n, [event, idle])

    if not is_connected(event):
        raise DomainError("le graphe d'événement doit être connexe")

    times = params.connect_times
    if isinstance(times, str):
        if times != POWERS_OF_TWO:
            raise DomainError(f"calendrier inconnu : {times!r}")
    else:
        times = tuple(times)
        logger.warning(
            f"⚠️ Calendrier fini ({len(times)} instants) : sigma(inf) se réduit au graphe de repos"
        )
    return SparseEventsSignal(int(n), with_leader, times, event, idle)


def make_bounded_intervals(n: int, params: BoundedIntervalsParams) -> BoundedIntervalsSignal:
    """Intervalles bornés et disjoints, union connexe sur chaque intervalle"""
    schedules = tuple(tuple(s) for s in params.schedules)
    graphs = [g for s in schedules for g in s]
    if not graphs:
        raise DomainError("aucun calendrier d'intervalle")
    with_leader = _check_agent_count(n, graphs)
    idle = params.idle_graph if params.idle_graph is not None else empty_graph(n, with_leader)

    starts = tuple(params.starts) if params.starts is not None else None
    signal = BoundedIntervalsSignal(
        int(n), with_leader, int(params.bound), schedules, idle,
        starts=starts, first=params.first, stride=params.stride,
    )
    if starts is not None:
        logger.warning(
            f"⚠️ {len(starts)} intervalles explicites : sigma(inf) se réduit au graphe de repos"
        )
    return signal


def make_random(n: int, seed: int, p: float, with_leader: bool = False) -> RandomSignal:
    if int(n) < 1:
        raise DomainError(f"nombre d'agents invalide : {n}")
    return RandomSignal(int(n), bool(with_leader), int(seed), float(p))


def make_geometric(n: int, radius: float,
                   neighborhood: Union[str, NeighborhoodKind] = NeighborhoodKind.CLOSED,
                   with_leader: bool = False) -> GeometricSignal:
    if int(n) < 1:
        raise DomainError(f"nombre d'agents invalide : {n}")
    return GeometricSignal(int(n), bool(with_leader), float(radius), NeighborhoodKind(neighborhood))
