"""
Signaux de commutation sigma : N -> graphes de voisinage.

Chaque variante est une valeur immuable ; `at(t)` est une fonction pure de t.
`recurring_graph()` renvoie sigma(infini) quand l'ensemble des arêtes
récurrentes est connu analytiquement, None sinon.
"""

from abc import ABC, abstractmethod
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, ClassVar, Dict, Optional, Tuple, Union

import numpy as np

from errors import ConfigurationError, DomainError
from graph.neighbor_graph import (
    NeighborGraph,
    complete_graph,
    empty_graph,
    from_adjacency,
    is_connected,
    union,
)
from utils.random_streams import WORDS_PER_BLOCK, block_stream, blocks_for

POWERS_OF_TWO = "powers_of_two"
# index de flux des graphes aléatoires ; les caps tirés utilisent les indices d'agents
RANDOM_GRAPH_STREAM = 2 ** 64 - 1


class TailPolicy(str, Enum):
    """Comportement d'une trace au-delà de sa longueur enregistrée"""

    HOLD_LAST = "hold_last"
    CYCLE = "cycle"
    EMPTY = "empty"


class NeighborhoodKind(str, Enum):
    """Disque fermé (d <= r) ou ouvert (d < r)"""

    CLOSED = "closed"
    OPEN = "open"


def check_time(t) -> int:
    t = int(t)
    if t < 0:
        raise DomainError(f"temps négatif : {t}")
    return t


def _edge_lists(graphs) -> list:
    return [[list(e) for e in g.sorted_edges()] for g in graphs]


@lru_cache(maxsize=None)
def _upper_pairs(order: int) -> Tuple[np.ndarray, np.ndarray]:
    rows, cols = np.triu_indices(order, k=1)
    rows.setflags(write=False)
    cols.setflags(write=False)
    return rows, cols


class SwitchingSignal(ABC):
    """Interface commune : n, with_leader, at(t), recurring_graph(), describe()"""

    variant: ClassVar[str]
    n: int
    with_leader: bool

    @abstractmethod
    def at(self, t: int) -> NeighborGraph:
        ...

    def recurring_graph(self) -> Optional[NeighborGraph]:
        return None

    def empty(self) -> NeighborGraph:
        return empty_graph(self.n, self.with_leader)

    def describe(self) -> Dict[str, Any]:
        return {"variant": self.variant, "n": self.n, "with_leader": self.with_leader}

    def _check_graph(self, g: NeighborGraph, role: str) -> None:
        if g.n != self.n or g.with_leader != self.with_leader:
            raise DomainError(
                f"{role} : graphe sur {g.vertex_range_label}, signal sur "
                f"{self.empty().vertex_range_label}"
            )


@dataclass(frozen=True)
class TraceSignal(SwitchingSignal):
    variant: ClassVar[str] = "trace"

    n: int
    with_leader: bool
    graphs: Tuple[NeighborGraph, ...]
    tail: TailPolicy

    def __post_init__(self):
        object.__setattr__(self, "tail", TailPolicy(self.tail))
        if not self.graphs and self.tail is not TailPolicy.EMPTY:
            raise DomainError(f"trace vide incompatible avec la politique {self.tail.value}")
        for t, g in enumerate(self.graphs):
            self._check_graph(g, f"trace[{t}]")

    def at(self, t: int) -> NeighborGraph:
        t = check_time(t)
        if t < len(self.graphs):
            return self.graphs[t]
        if self.tail is TailPolicy.HOLD_LAST:
            return self.graphs[-1]
        if self.tail is TailPolicy.CYCLE:
            return self.graphs[t % len(self.graphs)]
        return self.empty()

    def forced_limit(self) -> NeighborGraph:
        """Graphe que la politique de queue impose à sigma(infini)"""
        if self.tail is TailPolicy.HOLD_LAST:
            return self.graphs[-1]
        if self.tail is TailPolicy.CYCLE:
            return union(self.graphs)
        return self.empty()

    def describe(self) -> Dict[str, Any]:
        return {**super().describe(), "length": len(self.graphs), "tail": self.tail.value}


@dataclass(frozen=True)
class ConstantSignal(SwitchingSignal):
    variant: ClassVar[str] = "constant"

    n: int
    with_leader: bool
    graph: NeighborGraph

    def __post_init__(self):
        self._check_graph(self.graph, "graphe constant")

    def at(self, t: int) -> NeighborGraph:
        check_time(t)
        return self.graph

    def recurring_graph(self) -> NeighborGraph:
        return self.graph

    def describe(self) -> Dict[str, Any]:
        return {**super().describe(), "graph": _edge_lists([self.graph])[0]}


@dataclass(frozen=True)
class PeriodicSignal(SwitchingSignal):
    variant: ClassVar[str] = "periodic"

    n: int
    with_leader: bool
    phases: Tuple[NeighborGraph, ...]

    def __post_init__(self):
        if not self.phases:
            raise DomainError("période nulle")
        for k, g in enumerate(self.phases):
            self._check_graph(g, f"phase {k}")

    @property
    def period(self) -> int:
        return len(self.phases)

    @property
    def period_union_connected(self) -> bool:
        return is_connected(union(self.phases))

    def at(self, t: int) -> NeighborGraph:
        return self.phases[check_time(t) % self.period]

    def recurring_graph(self) -> NeighborGraph:
        return union(self.phases)

    def describe(self) -> Dict[str, Any]:
        return {**super().describe(), "period": self.period, "phases": _edge_lists(self.phases)}


@dataclass(frozen=True)
class SparseEventsSignal(SwitchingSignal):
    """event_graph aux instants de connexion, idle_graph ailleurs"""

    variant: ClassVar[str] = "sparse"

    n: int
    with_leader: bool
    connect_times: Union[str, Tuple[int, ...]]
    event_graph: NeighborGraph
    idle_graph: NeighborGraph

    def __post_init__(self):
        self._check_graph(self.event_graph, "graphe d'événement")
        self._check_graph(self.idle_graph, "graphe de repos")
        if self.connect_times != POWERS_OF_TWO:
            times = tuple(int(t) for t in self.connect_times)
            if any(t < 0 for t in times) or any(a >= b for a, b in zip(times, times[1:])):
                raise DomainError(f"instants de connexion non strictement croissants : {times}")
            object.__setattr__(self, "connect_times", times)

    @property
    def unbounded(self) -> bool:
        return self.connect_times == POWERS_OF_TWO

    def is_connect_time(self, t: int) -> bool:
        t = check_time(t)
        if self.unbounded:
            return t >= 1 and t & (t - 1) == 0
        k = bisect_right(self.connect_times, t)
        return k > 0 and self.connect_times[k - 1] == t

    def next_event_time(self, t: int) -> Optional[int]:
        """Premier instant de connexion >= t (None si le calendrier fini est épuisé)"""
        t = check_time(t)
        if self.unbounded:
            return 1 if t <= 1 else 1 << (t - 1).bit_length()
        k = bisect_right(self.connect_times, t - 1)
        return self.connect_times[k] if k < len(self.connect_times) else None

    def at(self, t: int) -> NeighborGraph:
        return self.event_graph if self.is_connect_time(t) else self.idle_graph

    def recurring_graph(self) -> NeighborGraph:
        if self.unbounded:
            return union([self.event_graph, self.idle_graph])
        return self.idle_graph

    def describe(self) -> Dict[str, Any]:
        times = self.connect_times if self.unbounded else list(self.connect_times)
        return {
            **super().describe(),
            "connect_times": times,
            "event_graph": _edge_lists([self.event_graph])[0],
            "idle_graph": _edge_lists([self.idle_graph])[0],
        }


@dataclass(frozen=True)
class BoundedIntervalsSignal(SwitchingSignal):
    """
    Intervalles bornés, disjoints, pas forcément contigus.

    L'intervalle k commence à starts[k] (liste explicite) ou à first + k*stride
    (règle arithmétique, infinie) et suit schedules[k % len(schedules)].
    Hors des intervalles, le signal vaut idle_graph.
    """

    variant: ClassVar[str] = "bounded_intervals"

    n: int
    with_leader: bool
    bound: int
    schedules: Tuple[Tuple[NeighborGraph, ...], ...]
    idle_graph: NeighborGraph
    starts: Optional[Tuple[int, ...]] = None
    first: Optional[int] = None
    stride: Optional[int] = None

    def __post_init__(self):
        if int(self.bound) < 1:
            raise DomainError(f"borne d'intervalle invalide : {self.bound}")
        if not self.schedules:
            raise DomainError("aucun calendrier d'intervalle")
        self._check_graph(self.idle_graph, "graphe de repos")
        for k, schedule in enumerate(self.schedules):
            if not schedule:
                raise DomainError(f"calendrier {k} vide")
            if len(schedule) > self.bound:
                raise DomainError(f"calendrier {k} de longueur {len(schedule)} > borne {self.bound}")
            for g in schedule:
                self._check_graph(g, f"calendrier {k}")
            if not is_connected(union(schedule)):
                raise DomainError(f"union du calendrier {k} non connexe")

        longest = max(len(s) for s in self.schedules)
        if self.starts is not None:
            if self.first is not None or self.stride is not None:
                raise DomainError("starts et (first, stride) sont exclusifs")
            starts = tuple(int(s) for s in self.starts)
            if any(s < 0 for s in starts):
                raise DomainError("début d'intervalle négatif")
            for k in range(len(starts) - 1):
                length = len(self.schedules[k % len(self.schedules)])
                if starts[k + 1] < starts[k] + length:
                    raise DomainError(
                        f"intervalles {k} et {k + 1} se chevauchent ({starts[k]}+{length} > {starts[k + 1]})"
                    )
            object.__setattr__(self, "starts", starts)
        else:
            if self.first is None or self.stride is None:
                raise DomainError("règle arithmétique incomplète : first et stride requis")
            if int(self.first) < 0:
                raise DomainError(f"premier intervalle négatif : {self.first}")
            if int(self.stride) < longest:
                raise DomainError(f"pas {self.stride} < longueur d'intervalle {longest} : chevauchement")
            object.__setattr__(self, "first", int(self.first))
            object.__setattr__(self, "stride", int(self.stride))

    @property
    def arithmetic(self) -> bool:
        return self.starts is None

    def interval_at(self, t: int) -> Optional[Tuple[int, int]]:
        """(indice d'intervalle, décalage) si t tombe dans un intervalle"""
        t = check_time(t)
        if self.arithmetic:
            if t < self.first:
                return None
            k, offset = divmod(t - self.first, self.stride)
        else:
            k = bisect_right(self.starts, t) - 1
            if k < 0:
                return None
            offset = t - self.starts[k]
        if offset < len(self.schedules[k % len(self.schedules)]):
            return k, offset
        return None

    def at(self, t: int) -> NeighborGraph:
        position = self.interval_at(t)
        if position is None:
            return self.idle_graph
        k, offset = position
        return self.schedules[k % len(self.schedules)][offset]

    def recurring_graph(self) -> NeighborGraph:
        if not self.arithmetic:
            return self.idle_graph
        graphs = [g for schedule in self.schedules for g in schedule]
        if any(len(schedule) < self.stride for schedule in self.schedules):
            graphs.append(self.idle_graph)
        return union(graphs)

    def describe(self) -> Dict[str, Any]:
        placement = ({"first": self.first, "stride": self.stride} if self.arithmetic
                     else {"starts": list(self.starts)})
        return {
            **super().describe(),
            "bound": self.bound,
            "schedules": [_edge_lists(s) for s in self.schedules],
            "idle_graph": _edge_lists([self.idle_graph])[0],
            **placement,
        }


@dataclass(frozen=True)
class RandomSignal(SwitchingSignal):
    """Tirage d'Erdős–Rényi à chaque t : blocs de compteur du pas t dans le flux de la graine"""

    variant: ClassVar[str] = "random"

    n: int
    with_leader: bool
    seed: int
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"probabilité d'arête hors de [0, 1] : {self.p}")
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError(f"graine hors de [0, 2^64) : {self.seed}")

    @property
    def order(self) -> int:
        return self.n + (1 if self.with_leader else 0)

    def adjacency_window(self, start: int, stop: int) -> np.ndarray:
        """
        Matrices d'adjacence de sigma(start), ..., sigma(stop - 1), de forme
        (stop - start, ordre, ordre). Le pas t occupe toujours les mêmes blocs
        du flux : la fenêtre coïncide pas à pas avec at(t).
        """
        start = check_time(start)
        if int(stop) <= start:
            raise DomainError(f"fenêtre vide : [{start}, {stop})")
        count = int(stop) - start
        rows, cols = _upper_pairs(self.order)
        width = blocks_for(rows.size)
        stream = block_stream(self.seed, RANDOM_GRAPH_STREAM, start * width)
        draws = stream.random(count * width * WORDS_PER_BLOCK).reshape(count, -1)
        matrices = np.zeros((count, self.order, self.order), dtype=bool)
        matrices[:, rows, cols] = draws[:, :rows.size] < self.p
        return matrices | matrices.transpose(0, 2, 1)

    def at(self, t: int) -> NeighborGraph:
        t = check_time(t)
        return from_adjacency(self.adjacency_window(t, t + 1)[0], self.with_leader)

    def recurring_graph(self) -> Optional[NeighborGraph]:
        if self.p == 0.0:
            return self.empty()
        if self.p == 1.0:
            return complete_graph(self.n, self.with_leader)
        return None

    def describe(self) -> Dict[str, Any]:
        return {**super().describe(), "seed": self.seed, "p": self.p}


@dataclass(frozen=True)
class GeometricSignal(SwitchingSignal):
    """
    Marqueur du modèle en boucle fermée : les graphes sont calculés à partir
    des positions, dans la boucle de simulation.
    """

    variant: ClassVar[str] = "geometric"

    n: int
    with_leader: bool
    radius: float
    neighborhood: NeighborhoodKind = NeighborhoodKind.CLOSED

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError(f"rayon r doit être > 0 : {self.radius}")
        object.__setattr__(self, "neighborhood", NeighborhoodKind(self.neighborhood))

    def at(self, t: int) -> NeighborGraph:
        raise ConfigurationError(
            "signal géométrique : le graphe dépend des positions, utiliser simulate() avec un PlanarState"
        )

    def describe(self) -> Dict[str, Any]:
        return {**super().describe(), "radius": self.radius, "neighborhood": self.neighborhood.value}
