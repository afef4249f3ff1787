"""
Vérification pas à pas de la séparation : si les agents se répartissent en un
groupe bas A = V_t(alpha - eps, alpha + eps) et un groupe haut
B = V_t(beta - eps, gamma + eps), un pas de moyenne soit conserve les deux
groupes (aucune arête entre A et B), soit retire de A exactement les agents
ayant un voisin dans B et place tous les autres au-dessus de
alpha + delta/n - eps.

Les appartenances utilisent des inégalités strictes ; un agent à moins de
BOUNDARY_TOLERANCE d'une borne est signalé ambigu au lieu d'être classé.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, FrozenSet, Optional, Tuple

import numpy as np

from config import BOUNDARY_TOLERANCE
from dynamics.headings import HeadingState
from errors import DomainError
from graph.neighbor_graph import NeighborGraph


class SeparationStatus(str, Enum):
    CONFIRMED = "confirmed"
    VIOLATED = "violated"
    HYPOTHESIS_VIOLATED = "hypothesis_violated"
    AMBIGUOUS = "ambiguous"


class SeparationBranch(str, Enum):
    DISCONNECTED = "disconnected"
    CONNECTED = "connected"


@dataclass(frozen=True)
class SeparationScenario:
    """
    Découpage (alpha, beta, gamma) pour n sommets.
    delta = beta - alpha, epsilon = delta / n**n.
    En mode leader, n compte aussi le leader.
    """

    alpha: float
    beta: float
    gamma: float
    n: int

    def __post_init__(self):
        values = (self.alpha, self.beta, self.gamma)
        if not all(math.isfinite(v) for v in values):
            raise DomainError(f"bornes non finies : {values}")
        if not self.alpha < self.beta < self.gamma:
            raise DomainError(f"alpha < beta < gamma attendu, reçu {values}")
        if int(self.n) < 1:
            raise DomainError(f"n doit être >= 1 : {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def delta(self) -> float:
        return self.beta - self.alpha

    @cached_property
    def epsilon(self) -> float:
        """Arrondi correct du quotient exact : aucun dépassement, 0.0 pour n grand"""
        return float(Fraction(self.delta) / self.n ** self.n)

    @property
    def lower_band(self) -> Tuple[float, float]:
        return (self.alpha - self.epsilon, self.alpha + self.epsilon)

    @property
    def upper_band(self) -> Tuple[float, float]:
        return (self.beta - self.epsilon, self.gamma + self.epsilon)

    @property
    def landing_band(self) -> Tuple[float, float]:
        """Intervalle où doivent se trouver à t+1 tous les agents hors de A"""
        return (self.alpha + self.delta / self.n - self.epsilon, self.gamma + self.epsilon)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "n": self.n,
            "delta": self.delta,
            "epsilon": self.epsilon,
        }


@dataclass(frozen=True)
class SeparationVerdict:
    status: SeparationStatus
    scenario: SeparationScenario
    branch: Optional[SeparationBranch] = None
    lower_set: FrozenSet[int] = frozenset()
    upper_set: FrozenSet[int] = frozenset()
    lower_set_next: FrozenSet[int] = frozenset()
    expected_lower_set_next: FrozenSet[int] = frozenset()
    departing: FrozenSet[int] = frozenset()
    violating: FrozenSet[int] = frozenset()
    ambiguous: FrozenSet[int] = frozenset()
    detail: str = ""

    @property
    def is_failure(self) -> bool:
        return self.status is SeparationStatus.VIOLATED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "branch": self.branch.value if self.branch else None,
            "scenario": self.scenario.to_dict(),
            "A": sorted(self.lower_set),
            "B": sorted(self.upper_set),
            "A_next": sorted(self.lower_set_next),
            "expected_A_next": sorted(self.expected_lower_set_next),
            "departing": sorted(self.departing),
            "violating": sorted(self.violating),
            "ambiguous": sorted(self.ambiguous),
            "detail": self.detail,
        }


@dataclass
class _Membership:
    inside: FrozenSet[int] = field(default_factory=frozenset)
    ambiguous: FrozenSet[int] = field(default_factory=frozenset)


def vertices_between(state: HeadingState, a: float, b: float,
                     boundary_tol: float = BOUNDARY_TOLERANCE) -> _Membership:
    """V_t(a, b) = {i : a < theta_i < b}, plus les agents proches d'une borne"""
    values = state.values
    vertices = np.arange(state.first_vertex, state.first_vertex + state.size)
    inside = (values > a) & (values < b)
    near = (np.abs(values - a) <= boundary_tol) | (np.abs(values - b) <= boundary_tol)
    return _Membership(frozenset(vertices[inside].tolist()), frozenset(vertices[near].tolist()))


def _sets_connected(g: NeighborGraph, a: FrozenSet[int], b: FrozenSet[int]) -> bool:
    if not a or not b:
        return False
    rows = [g.index(v) for v in sorted(a)]
    cols = [g.index(v) for v in sorted(b)]
    return bool(g.adjacency[np.ix_(rows, cols)].any())


def _neighbors_in(g: NeighborGraph, vertex: int, targets: FrozenSet[int]) -> bool:
    row = g.adjacency[g.index(vertex)]
    return any(row[g.index(v)] for v in targets)


def _classify(violating: FrozenSet[int], ambiguous: FrozenSet[int]) -> SeparationStatus:
    if not violating:
        return SeparationStatus.CONFIRMED
    if violating <= ambiguous:
        return SeparationStatus.AMBIGUOUS
    return SeparationStatus.VIOLATED


def check_separation_step(scn: SeparationScenario,
                          state_t: HeadingState,
                          g_t: NeighborGraph,
                          state_t1: HeadingState,
                          boundary_tol: float = BOUNDARY_TOLERANCE) -> SeparationVerdict:
    """
    Confronte l'état réel à t+1 à la branche applicable selon que A et B sont
    reliés dans g_t. Ne lève jamais pour une propriété non satisfaite.
    """
    sizes = {state_t.size, state_t1.size, g_t.order}
    if len(sizes) != 1 or state_t.with_leader != g_t.with_leader or state_t1.with_leader != g_t.with_leader:
        return SeparationVerdict(SeparationStatus.HYPOTHESIS_VIOLATED, scn,
                                 detail="états et graphe de tailles incompatibles")
    if scn.n != state_t.size:
        return SeparationVerdict(SeparationStatus.HYPOTHESIS_VIOLATED, scn,
                                 detail=f"scénario défini pour n = {scn.n}, état de {state_t.size} sommets")

    lower = vertices_between(state_t, *scn.lower_band, boundary_tol)
    upper = vertices_between(state_t, *scn.upper_band, boundary_tol)
    base = dict(scenario=scn, lower_set=lower.inside, upper_set=upper.inside)

    ambiguous_t = lower.ambiguous | upper.ambiguous
    if ambiguous_t:
        return SeparationVerdict(SeparationStatus.AMBIGUOUS, ambiguous=ambiguous_t,
                                 detail="agents sur une borne à l'instant t", **base)

    everyone = frozenset(g_t.vertices)
    if not lower.inside or not upper.inside:
        return SeparationVerdict(SeparationStatus.HYPOTHESIS_VIOLATED,
                                 detail="A ou B vide", **base)
    if lower.inside & upper.inside:
        return SeparationVerdict(SeparationStatus.HYPOTHESIS_VIOLATED,
                                 detail="A et B non disjoints", **base)
    if lower.inside | upper.inside != everyone:
        return SeparationVerdict(SeparationStatus.HYPOTHESIS_VIOLATED,
                                 detail="A U B ne couvre pas tous les sommets", **base)

    lower_next = vertices_between(state_t1, *scn.lower_band, boundary_tol)

    if not _sets_connected(g_t, lower.inside, upper.inside):
        upper_next = vertices_between(state_t1, *scn.upper_band, boundary_tol)
        violating = (lower_next.inside ^ lower.inside) | (upper_next.inside ^ upper.inside)
        ambiguous = lower_next.ambiguous | upper_next.ambiguous
        return SeparationVerdict(
            _classify(violating, ambiguous),
            branch=SeparationBranch.DISCONNECTED,
            lower_set_next=lower_next.inside,
            expected_lower_set_next=lower.inside,
            violating=violating,
            ambiguous=ambiguous,
            **base,
        )

    # le leader garde theta0 : il ne quitte jamais A
    departing = frozenset(
        v for v in lower.inside
        if not (g_t.with_leader and v == 0) and _neighbors_in(g_t, v, upper.inside)
    )
    expected = lower.inside - departing
    landing = vertices_between(state_t1, *scn.landing_band, boundary_tol)
    violating = (lower_next.inside ^ expected) | ((everyone - expected) ^ landing.inside)
    ambiguous = lower_next.ambiguous | landing.ambiguous
    return SeparationVerdict(
        _classify(violating, ambiguous),
        branch=SeparationBranch.CONNECTED,
        lower_set_next=lower_next.inside,
        expected_lower_set_next=expected,
        departing=departing,
        violating=violating,
        ambiguous=ambiguous,
        **base,
    )


def initial_separation_scenario(state: HeadingState) -> Optional[SeparationScenario]:
    """
    Découpage valide à l'instant de l'état : alpha = min, beta = deuxième
    valeur distincte, gamma = max (beta + delta si seules deux valeurs).
    None s'il y a moins de deux valeurs distinctes.
    """
    distinct = np.unique(state.values)
    if distinct.size < 2:
        return None
    alpha, beta = float(distinct[0]), float(distinct[1])
    gamma = float(distinct[-1]) if distinct.size > 2 else beta + (beta - alpha)
    return SeparationScenario(alpha, beta, gamma, state.size)
