"""
Unions sur fenêtre, graphe limite sigma(infini) et vérification de la
connectivité conjointe finale.
"""

from enum import Enum
from typing import NamedTuple, Optional

from errors import ConfigurationError, DomainError
from graph.neighbor_graph import NeighborGraph, is_connected, union
from signals.switching import GeometricSignal, SwitchingSignal, TraceSignal, check_time


class JointConnectivity(str, Enum):
    PROVEN_YES = "proven_yes"
    PROVEN_NO = "proven_no"
    UNKNOWN_AT_HORIZON = "unknown_at_horizon"


class LimitGraph(NamedTuple):
    graph: NeighborGraph
    exact: bool


def window_union(sig: SwitchingSignal, start: int, stop: int) -> NeighborGraph:
    """Union de sigma(t) pour t dans [start, stop)"""
    start = check_time(start)
    if not start < int(stop):
        raise DomainError(f"fenêtre invalide [{start}, {stop})")
    return union(sig.at(t) for t in range(start, int(stop)))


def limit_graph(sig: SwitchingSignal, horizon: int) -> LimitGraph:
    """
    sigma(infini) : exact quand l'ensemble récurrent est connu analytiquement,
    sinon union sur la queue [horizon/2, horizon) (approximation).
    """
    horizon = int(horizon)
    if horizon <= 0:
        raise DomainError(f"horizon doit être > 0 : {horizon}")
    if isinstance(sig, GeometricSignal):
        raise ConfigurationError(
            "sigma(inf) d'un signal géométrique : analyser la trajectoire (Trajectory.as_trace_signal)"
        )

    recurring = None if isinstance(sig, TraceSignal) else sig.recurring_graph()
    if recurring is not None:
        return LimitGraph(recurring, True)
    return LimitGraph(window_union(sig, horizon // 2, horizon), False)


def verify_finally_jointly_connected(sig: SwitchingSignal, horizon: int) -> JointConnectivity:
    """ProvenYes / ProvenNo quand sigma(infini) est connu, UnknownAtHorizon sinon"""
    if int(horizon) <= 0:
        raise DomainError(f"horizon doit être > 0 : {horizon}")

    if isinstance(sig, TraceSignal):
        # une politique de queue ne prouve que le négatif
        if not is_connected(sig.forced_limit()):
            return JointConnectivity.PROVEN_NO
        return JointConnectivity.UNKNOWN_AT_HORIZON

    recurring = sig.recurring_graph()
    if recurring is None:
        return JointConnectivity.UNKNOWN_AT_HORIZON
    if is_connected(recurring):
        return JointConnectivity.PROVEN_YES
    return JointConnectivity.PROVEN_NO


def first_disconnected_window(sig: SwitchingSignal, window: int, horizon: int) -> Optional[int]:
    """
    Connectivité conjointe périodique sur un horizon fini : premier début s
    dans [0, horizon - window] tel que l'union de sigma(s..s+window-1) soit
    non connexe, ou None si toutes les fenêtres sont connexes.
    """
    window, horizon = int(window), int(horizon)
    if window < 1:
        raise DomainError(f"fenêtre invalide : {window}")
    if horizon < window:
        raise DomainError(f"horizon {horizon} plus court que la fenêtre {window}")

    graphs = [sig.at(t) for t in range(horizon)]
    for start in range(horizon - window + 1):
        if not is_connected(union(graphs[start:start + window])):
            return start
    return None
