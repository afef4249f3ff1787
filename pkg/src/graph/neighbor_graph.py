"""
Graphes de voisinage non orientés sur un ensemble de sommets fixe.

Les suiveurs sont numérotés 1..n ; en mode leader, le sommet 0 s'ajoute
(V+ = {0, 1, ..., n}). Un graphe est immuable et son ensemble d'arêtes est
canonique (i < j), donc l'égalité de deux graphes est l'égalité des ensembles.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import FrozenSet, Iterable, List, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _csgraph_components

from errors import DomainError

Edge = Tuple[int, int]


@dataclass(frozen=True)
class NeighborGraph:
    """Une tranche temporelle sigma(t) du signal de commutation"""

    n: int
    edges: FrozenSet[Edge] = field(default_factory=frozenset)
    with_leader: bool = False

    def __post_init__(self):
        if int(self.n) < 1:
            raise DomainError(f"nombre d'agents invalide : {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "with_leader", bool(self.with_leader))
        canonical = frozenset(self._canonical(pair) for pair in self.edges)
        object.__setattr__(self, "edges", canonical)

    def _canonical(self, pair) -> Edge:
        try:
            i, j = (int(v) for v in pair)
        except (TypeError, ValueError):
            raise DomainError(f"arête mal formée : {pair!r}")
        if i == j:
            raise DomainError(f"boucle interdite sur le sommet {i}")
        for v in (i, j):
            if not self.first_vertex <= v <= self.n:
                raise DomainError(f"sommet {v} hors de {self.vertex_range_label}")
        return (i, j) if i < j else (j, i)

    @property
    def first_vertex(self) -> int:
        return 0 if self.with_leader else 1

    @property
    def order(self) -> int:
        """Nombre total de sommets (leader compris)"""
        return self.n + (1 if self.with_leader else 0)

    @property
    def vertices(self) -> range:
        return range(self.first_vertex, self.n + 1)

    @property
    def vertex_range_label(self) -> str:
        return f"{{{self.first_vertex}..{self.n}}}"

    def index(self, vertex: int) -> int:
        """Position du sommet dans les vecteurs d'état et la matrice d'adjacence"""
        self.check_vertex(vertex)
        return int(vertex) - self.first_vertex

    def check_vertex(self, vertex: int) -> None:
        if not self.first_vertex <= int(vertex) <= self.n:
            raise DomainError(f"sommet inconnu {vertex} (sommets {self.vertex_range_label})")

    def same_vertex_set(self, other: "NeighborGraph") -> bool:
        return self.n == other.n and self.with_leader == other.with_leader

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Matrice d'adjacence booléenne en lecture seule (ligne k = sommet first_vertex + k)"""
        matrix = np.zeros((self.order, self.order), dtype=bool)
        if self.edges:
            rows, cols = np.array(sorted(self.edges)).T - self.first_vertex
            matrix[rows, cols] = True
            matrix[cols, rows] = True
        matrix.setflags(write=False)
        return matrix

    def degree(self, vertex: int) -> int:
        return int(self.adjacency[self.index(vertex)].sum())

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def __repr__(self) -> str:
        leader = ", leader" if self.with_leader else ""
        return f"NeighborGraph(n={self.n}{leader}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class VertexPartition:
    """Partition de V (ou V+) en blocs disjoints non vides, triés par plus petit membre"""

    blocks: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        if any(not b for b in blocks):
            raise DomainError("bloc vide dans la partition")
        seen = set()
        for block in blocks:
            if seen & block:
                raise DomainError("blocs non disjoints dans la partition")
            seen |= block
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=min)))

    @property
    def count(self) -> int:
        return len(self.blocks)

    def block_of(self, vertex: int) -> FrozenSet[int]:
        for block in self.blocks:
            if vertex in block:
                return block
        raise DomainError(f"sommet {vertex} absent de la partition")

    def as_lists(self) -> List[List[int]]:
        return [sorted(b) for b in self.blocks]


# --- Constructeurs usuels ---

def empty_graph(n: int, with_leader: bool = False) -> NeighborGraph:
    return NeighborGraph(n, frozenset(), with_leader)


def complete_graph(n: int, with_leader: bool = False) -> NeighborGraph:
    first = 0 if with_leader else 1
    return NeighborGraph(n, frozenset(combinations(range(first, n + 1), 2)), with_leader)


def star_graph(n: int, center: int = 1, with_leader: bool = False) -> NeighborGraph:
    first = 0 if with_leader else 1
    return NeighborGraph(n, frozenset((center, v) for v in range(first, n + 1) if v != center), with_leader)


def path_graph(n: int, with_leader: bool = False) -> NeighborGraph:
    first = 0 if with_leader else 1
    return NeighborGraph(n, frozenset((v, v + 1) for v in range(first, n)), with_leader)


def cycle_graph(n: int, with_leader: bool = False) -> NeighborGraph:
    path = path_graph(n, with_leader)
    first = path.first_vertex
    if path.order < 3:
        return path
    return NeighborGraph(n, path.edges | {(first, n)}, with_leader)


def from_adjacency(matrix: np.ndarray, with_leader: bool = False) -> NeighborGraph:
    """Graphe à partir d'une matrice d'adjacence (seul le triangle supérieur est lu)"""
    matrix = np.asarray(matrix, dtype=bool)
    order = matrix.shape[0]
    first = 0 if with_leader else 1
    rows, cols = np.nonzero(np.triu(matrix, k=1))
    edges = frozenset(zip((rows + first).tolist(), (cols + first).tolist()))
    return NeighborGraph(order - (1 if with_leader else 0), edges, with_leader)


# --- Opérations ---

def neighbors(g: NeighborGraph, i: int) -> FrozenSet[int]:
    """N_i : sommets adjacents à i (i n'en fait jamais partie)"""
    row = g.adjacency[g.index(i)]
    return frozenset((np.flatnonzero(row) + g.first_vertex).tolist())


def union(graphs: Iterable[NeighborGraph]) -> NeighborGraph:
    """Union des arêtes de graphes partageant le même ensemble de sommets"""
    graphs = list(graphs)
    if not graphs:
        raise DomainError("union d'une séquence vide")
    first = graphs[0]
    edges = set()
    for g in graphs:
        if not g.same_vertex_set(first):
            raise DomainError(
                f"ensembles de sommets différents : {first.vertex_range_label} vs {g.vertex_range_label}"
            )
        edges |= g.edges
    return NeighborGraph(first.n, frozenset(edges), first.with_leader)


def is_subgraph(a: NeighborGraph, b: NeighborGraph) -> bool:
    """Vrai si toutes les arêtes de a sont dans b"""
    return a.same_vertex_set(b) and a.edges <= b.edges


def _component_labels(g: NeighborGraph) -> Tuple[int, np.ndarray]:
    return _csgraph_components(csr_matrix(g.adjacency), directed=False)


def is_connected(g: NeighborGraph) -> bool:
    if g.order == 1:
        return True
    count, _ = _component_labels(g)
    return count == 1


def connected_components(g: NeighborGraph) -> VertexPartition:
    """Composantes connexes, ordonnées par plus petit sommet"""
    _, labels = _component_labels(g)
    blocks = {}
    for position, label in enumerate(labels.tolist()):
        blocks.setdefault(label, set()).add(position + g.first_vertex)
    return VertexPartition(tuple(frozenset(b) for b in blocks.values()))


# --- Forme texte (fixtures) ---

def to_edge_list(g: NeighborGraph) -> str:
    """En-tête "n=<count>" (suivi de " leader" sur V+), puis une ligne "i j" par arête"""
    header = f"n={g.n}" + (" leader" if g.with_leader else "")
    lines = [header] + [f"{i} {j}" for i, j in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> NeighborGraph:
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines or not lines[0].startswith("n="):
        raise DomainError("en-tête 'n=<count>' manquant")
    header = lines[0].split()
    try:
        n = int(header[0][2:])
    except ValueError:
        raise DomainError(f"en-tête invalide : {lines[0]!r}")
    with_leader = len(header) > 1 and header[1] == "leader"
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise DomainError(f"ligne d'arête invalide : {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise DomainError(f"ligne d'arête invalide : {line!r}")
    return NeighborGraph(n, frozenset(edges), with_leader)
