import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_graph, transitive_closure
from errors import DomainError
from graph.neighbor_graph import (
    NeighborGraph,
    VertexPartition,
    complete_graph,
    connected_components,
    cycle_graph,
    empty_graph,
    from_adjacency,
    from_edge_list,
    is_connected,
    is_subgraph,
    neighbors,
    path_graph,
    star_graph,
    to_edge_list,
    union,
)


def graphs_on(n):
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return st.sets(st.sampled_from(pairs)).map(lambda edges: NeighborGraph(n, frozenset(edges)))


class TestNeighborGraph:
    def test_edges_are_canonical(self):
        g = NeighborGraph(3, frozenset({(2, 1), (3, 2)}))
        assert g.edges == frozenset({(1, 2), (2, 3)})
        assert g == NeighborGraph(3, frozenset({(1, 2), (2, 3)}))

    def test_self_loop_rejected(self):
        with pytest.raises(DomainError):
            NeighborGraph(3, frozenset({(2, 2)}))

    def test_endpoint_outside_vertex_set(self):
        with pytest.raises(DomainError):
            NeighborGraph(3, frozenset({(1, 4)}))
        with pytest.raises(DomainError):
            NeighborGraph(3, frozenset({(0, 1)}))

    def test_zero_agents_rejected(self):
        with pytest.raises(DomainError):
            empty_graph(0)

    def test_leader_vertex_set(self):
        g = NeighborGraph(3, frozenset({(0, 1)}), with_leader=True)
        assert list(g.vertices) == [0, 1, 2, 3]
        assert g.order == 4
        assert g.degree(0) == 1

    def test_adjacency_is_read_only(self):
        g = path_graph(3)
        assert g.adjacency.tolist() == [[False, True, False], [True, False, True], [False, True, False]]
        with pytest.raises(ValueError):
            g.adjacency[0, 0] = True

    def test_shapes(self):
        assert len(complete_graph(4).edges) == 6
        assert star_graph(5).edges == frozenset({(1, 2), (1, 3), (1, 4), (1, 5)})
        assert path_graph(4).edges == frozenset({(1, 2), (2, 3), (3, 4)})
        assert cycle_graph(4).edges == frozenset({(1, 2), (2, 3), (3, 4), (1, 4)})
        assert cycle_graph(2) == path_graph(2)

    def test_from_adjacency(self):
        matrix = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=bool)
        assert from_adjacency(matrix) == NeighborGraph(3, frozenset({(1, 2)}))
        assert from_adjacency(matrix, with_leader=True) == NeighborGraph(2, frozenset({(0, 1)}), True)


class TestNeighbors:
    def test_empty_graph(self):
        assert neighbors(empty_graph(3), 1) == frozenset()

    def test_path(self):
        assert neighbors(path_graph(3), 2) == frozenset({1, 3})

    def test_star_center(self):
        assert neighbors(star_graph(5), 1) == frozenset({2, 3, 4, 5})

    def test_unknown_vertex(self):
        with pytest.raises(DomainError):
            neighbors(path_graph(3), 4)


class TestUnion:
    def test_empty_graphs(self):
        assert union([empty_graph(4), empty_graph(4)]) == empty_graph(4)

    def test_two_edges(self):
        a = NeighborGraph(3, frozenset({(1, 2)}))
        b = NeighborGraph(3, frozenset({(2, 3)}))
        assert union([a, b]).edges == frozenset({(1, 2), (2, 3)})

    def test_single_edges_give_complete_graph(self):
        singles = [NeighborGraph(4, frozenset({e})) for e in complete_graph(4).edges]
        result = union(singles)
        assert result == complete_graph(4)
        assert len(result.edges) == 6

    def test_empty_sequence(self):
        with pytest.raises(DomainError):
            union([])

    def test_mismatched_vertex_sets(self):
        with pytest.raises(DomainError):
            union([empty_graph(3), empty_graph(4)])
        with pytest.raises(DomainError):
            union([empty_graph(3), empty_graph(3, with_leader=True)])

    @given(graphs_on(5), graphs_on(5), graphs_on(5))
    def test_algebra(self, a, b, c):
        assert union([a, a]) == a
        assert union([a, b]) == union([b, a])
        assert union([union([a, b]), c]) == union([a, union([b, c])])
        assert is_subgraph(a, union([a, b]))

    @given(st.lists(graphs_on(5), min_size=1, max_size=6), graphs_on(5))
    def test_connectivity_is_monotone(self, graphs, extra):
        if is_connected(union(graphs)):
            assert is_connected(union(graphs + [extra]))


class TestConnectivity:
    def test_single_vertex(self):
        assert is_connected(empty_graph(1))

    def test_isolated_vertex(self):
        assert not is_connected(NeighborGraph(3, frozenset({(1, 2)})))

    def test_components_of_empty_graph(self):
        assert connected_components(empty_graph(3)).as_lists() == [[1], [2], [3]]

    def test_components_ordering(self):
        g = NeighborGraph(5, frozenset({(3, 4), (1, 2)}))
        assert connected_components(g).as_lists() == [[1, 2], [3, 4], [5]]

    def test_leader_components(self):
        g = NeighborGraph(3, frozenset({(0, 2)}), with_leader=True)
        partition = connected_components(g)
        assert partition.as_lists() == [[0, 2], [1], [3]]
        assert partition.block_of(2) == frozenset({0, 2})

    def test_transitive_closure_oracle(self, rng):
        # 500 tirages, n <= 6
        for draw in range(500):
            n = int(rng.integers(1, 7))
            g = random_graph(rng, n, p=float(rng.uniform(0.0, 0.7)), with_leader=bool(draw % 5 == 0))
            reach = transitive_closure(g)
            assert is_connected(g) == bool(reach.all())

            partition = connected_components(g)
            assert (partition.count == 1) == is_connected(g)
            for u in g.vertices:
                for v in g.vertices:
                    same_block = v in partition.block_of(u)
                    assert same_block == bool(reach[g.index(u), g.index(v)])


class TestVertexPartition:
    def test_overlapping_blocks_rejected(self):
        with pytest.raises(DomainError):
            VertexPartition((frozenset({1, 2}), frozenset({2, 3})))

    def test_empty_block_rejected(self):
        with pytest.raises(DomainError):
            VertexPartition((frozenset({1}), frozenset()))


class TestEdgeListText:
    def test_format(self):
        g = NeighborGraph(4, frozenset({(3, 4), (2, 1)}))
        assert to_edge_list(g) == "n=4\n1 2\n3 4\n"

    def test_leader_header(self):
        g = NeighborGraph(2, frozenset({(0, 1)}), True)
        assert to_edge_list(g) == "n=2 leader\n0 1\n"
        assert from_edge_list(to_edge_list(g)) == g

    def test_missing_header(self):
        with pytest.raises(DomainError):
            from_edge_list("1 2\n")

    def test_malformed_line(self):
        with pytest.raises(DomainError):
            from_edge_list("n=3\n1 2 3\n")

    def test_non_integer_vertex(self):
        with pytest.raises(DomainError, match="1 x"):
            from_edge_list("n=3\n1 x\n")
