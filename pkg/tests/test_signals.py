import logging

import numpy as np
import pytest

from errors import ConfigurationError, DomainError
from graph.neighbor_graph import (
    NeighborGraph,
    complete_graph,
    cycle_graph,
    empty_graph,
    is_subgraph,
    path_graph,
    star_graph,
    union,
)
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
from signals.limits import (
    JointConnectivity,
    first_disconnected_window,
    limit_graph,
    verify_finally_jointly_connected,
    window_union,
)
from signals.switching import POWERS_OF_TWO, TailPolicy


def edge(n, i, j, with_leader=False):
    return NeighborGraph(n, frozenset({(i, j)}), with_leader)


@pytest.fixture
def sparse_star():
    return make_sparse_events(5, SparseEventsParams(POWERS_OF_TWO, star_graph(5)))


class TestAt:
    def test_constant(self):
        g = path_graph(4)
        sig = make_constant(g)
        assert all(sig.at(t) == g for t in (0, 1, 17, 10_000))

    def test_sparse_schedule(self, sparse_star):
        assert sparse_star.at(4) == star_graph(5)
        assert sparse_star.at(5) == empty_graph(5)
        assert sparse_star.at(0) == empty_graph(5)
        assert sparse_star.at(1) == star_graph(5)

    def test_periodic_phase(self):
        g0, g1 = edge(3, 1, 2), edge(3, 2, 3)
        sig = make_periodic(3, 2, [g0, g1])
        assert sig.at(7) == g1
        assert sig.at(8) == g0

    def test_negative_time(self):
        with pytest.raises(DomainError):
            make_constant(path_graph(3)).at(-1)

    @pytest.mark.parametrize("tail, expected", [
        (TailPolicy.HOLD_LAST, "last"),
        (TailPolicy.CYCLE, "cycle"),
        (TailPolicy.EMPTY, "empty"),
    ])
    def test_trace_tail_policies(self, tail, expected):
        graphs = [edge(3, 1, 2), edge(3, 2, 3)]
        sig = make_trace(graphs, tail)
        assert sig.at(1) == graphs[1]
        past = sig.at(4)
        if expected == "last":
            assert past == graphs[1]
        elif expected == "cycle":
            assert past == graphs[0]
        else:
            assert past == empty_graph(3)

    def test_geometric_has_no_time_function(self):
        sig = make_geometric(3, 1.0)
        with pytest.raises(ConfigurationError):
            sig.at(0)
        with pytest.raises(ConfigurationError):
            limit_graph(sig, 10)


class TestPeriodic:
    def test_single_connected_phase(self):
        assert make_periodic(3, 1, [path_graph(3)]).period_union_connected

    def test_union_over_period(self):
        sig = make_periodic(3, 3, [edge(3, 1, 2), edge(3, 2, 3), empty_graph(3)])
        assert sig.period_union_connected

    def test_disconnected_union_warns(self, caplog):
        with caplog.at_level(logging.WARNING):
            sig = make_periodic(4, 2, [edge(4, 1, 2), edge(4, 1, 2)])
        assert not sig.period_union_connected
        assert "NON connexe" in caplog.text

    def test_phase_count_mismatch(self):
        with pytest.raises(DomainError):
            make_periodic(3, 3, [path_graph(3)])

    def test_window_union_is_triangle(self):
        sig = make_periodic(3, 3, [edge(3, 1, 2), edge(3, 2, 3), edge(3, 1, 3)])
        assert window_union(sig, 0, 3) == complete_graph(3)

    def test_connected_period_is_finally_jointly_connected(self):
        sig = make_periodic(4, 3, [edge(4, 1, 2), edge(4, 2, 3), edge(4, 3, 4)])
        assert verify_finally_jointly_connected(sig, 100) is JointConnectivity.PROVEN_YES
        assert first_disconnected_window(sig, 3, 60) is None


class TestSparseEvents:
    def test_limit_is_star(self, sparse_star):
        limit = limit_graph(sparse_star, 100)
        assert limit.exact
        assert limit.graph == star_graph(5)
        assert verify_finally_jointly_connected(sparse_star, 100) is JointConnectivity.PROVEN_YES

    def test_idle_edges_join_limit(self):
        idle = edge(5, 1, 2)
        sig = make_sparse_events(5, SparseEventsParams(POWERS_OF_TWO, star_graph(5, center=3), idle))
        assert limit_graph(sig, 10).graph == union([star_graph(5, center=3), idle])

    def test_finite_schedule_warns(self, caplog):
        with caplog.at_level(logging.WARNING):
            sig = make_sparse_events(4, SparseEventsParams([3], path_graph(4)))
        assert "Calendrier fini" in caplog.text
        assert limit_graph(sig, 10).graph == empty_graph(4)
        assert verify_finally_jointly_connected(sig, 10) is JointConnectivity.PROVEN_NO

    def test_disconnected_event_graph(self):
        with pytest.raises(DomainError):
            make_sparse_events(4, SparseEventsParams(POWERS_OF_TWO, edge(4, 1, 2)))

    def test_times_must_increase(self):
        with pytest.raises(DomainError):
            make_sparse_events(3, SparseEventsParams([4, 2], path_graph(3)))

    def test_unknown_schedule_name(self):
        with pytest.raises(DomainError):
            make_sparse_events(3, SparseEventsParams("fibonacci", path_graph(3)))

    def test_window_unions(self, sparse_star):
        assert window_union(sparse_star, 3, 4) == empty_graph(5)
        assert window_union(sparse_star, 3, 5) == star_graph(5)

    def test_next_event_time(self, sparse_star):
        assert [sparse_star.next_event_time(t) for t in (0, 1, 2, 3, 5, 9, 16)] == [1, 1, 2, 4, 8, 16, 16]
        finite = make_sparse_events(3, SparseEventsParams([2, 6], path_graph(3)))
        assert finite.next_event_time(3) == 6
        assert finite.next_event_time(7) is None

    def test_union_from_any_start_contains_event(self, sparse_star):
        for k in range(200):
            stop = sparse_star.next_event_time(k) + 1
            assert is_subgraph(star_graph(5), window_union(sparse_star, k, stop))

    def test_not_periodically_jointly_connected(self, sparse_star):
        # écart 64 -> 128 : aucune fenêtre de 40 pas ne contient d'événement après t = 65
        assert first_disconnected_window(sparse_star, 40, 200) is not None


class TestBoundedIntervals:
    def test_arithmetic_rule(self):
        params = BoundedIntervalsParams(
            bound=4, schedules=[[edge(4, 1, 2), edge(4, 2, 3), edge(4, 3, 4)]], first=0, stride=7,
        )
        sig = make_bounded_intervals(4, params)
        assert sig.at(0) == edge(4, 1, 2)
        assert sig.at(8) == edge(4, 2, 3)
        assert sig.at(9) == edge(4, 3, 4)
        assert sig.at(5) == empty_graph(4)
        assert sig.interval_at(16) == (2, 2)
        limit = limit_graph(sig, 50)
        assert limit.exact and limit.graph == path_graph(4)
        assert verify_finally_jointly_connected(sig, 50) is JointConnectivity.PROVEN_YES

    def test_explicit_starts(self, caplog):
        params = BoundedIntervalsParams(bound=2, schedules=[[path_graph(3)]], starts=[2, 10])
        with caplog.at_level(logging.WARNING):
            sig = make_bounded_intervals(3, params)
        assert sig.at(2) == path_graph(3)
        assert sig.at(3) == empty_graph(3)
        assert sig.at(10) == path_graph(3)
        assert "intervalles explicites" in caplog.text
        assert verify_finally_jointly_connected(sig, 20) is JointConnectivity.PROVEN_NO

    def test_disconnected_schedule_rejected(self):
        params = BoundedIntervalsParams(bound=3, schedules=[[edge(4, 1, 2), edge(4, 3, 4)]], first=0, stride=5)
        with pytest.raises(DomainError):
            make_bounded_intervals(4, params)

    def test_schedule_longer_than_bound(self):
        params = BoundedIntervalsParams(bound=1, schedules=[[edge(3, 1, 2), edge(3, 2, 3)]], first=0, stride=5)
        with pytest.raises(DomainError):
            make_bounded_intervals(3, params)

    def test_overlapping_intervals(self):
        params = BoundedIntervalsParams(bound=3, schedules=[[edge(3, 1, 2), edge(3, 2, 3)]], starts=[0, 1])
        with pytest.raises(DomainError):
            make_bounded_intervals(3, params)
        params = BoundedIntervalsParams(bound=3, schedules=[[edge(3, 1, 2), edge(3, 2, 3)]], first=0, stride=1)
        with pytest.raises(DomainError):
            make_bounded_intervals(3, params)


class TestRandom:
    def test_extreme_probabilities(self):
        assert make_random(5, 3, 0.0).at(12) == empty_graph(5)
        assert make_random(5, 3, 1.0).at(12) == complete_graph(5)
        assert limit_graph(make_random(5, 3, 1.0), 10).exact

    def test_probability_out_of_range(self):
        with pytest.raises(DomainError):
            make_random(4, 1, 1.5)
        with pytest.raises(DomainError):
            make_random(4, 1, -0.1)

    def test_random_access_is_deterministic(self):
        sig = make_random(6, 42, 0.5)
        first = sig.at(17)
        sig.at(99)
        assert sig.at(17) == first
        assert make_random(6, 42, 0.5).at(17) == first

    def test_intermediate_probability_is_unknown(self):
        sig = make_random(6, 42, 0.5)
        assert verify_finally_jointly_connected(sig, 100) is JointConnectivity.UNKNOWN_AT_HORIZON
        assert not limit_graph(sig, 100).exact

    def test_leader_vertex_drawn(self):
        g = make_random(3, 5, 1.0, with_leader=True).at(0)
        assert g == complete_graph(3, with_leader=True)

    @pytest.mark.parametrize("start", [0, 7])
    def test_window_matches_single_steps(self, start):
        sig = make_random(7, 11, 0.5)
        window = sig.adjacency_window(start, start + 25)
        assert window.shape == (25, 7, 7)
        for k in range(25):
            assert np.array_equal(window[k], sig.at(start + k).adjacency)
        assert np.array_equal(window, window.transpose(0, 2, 1))

    def test_window_must_be_nonempty(self):
        with pytest.raises(DomainError):
            make_random(4, 1, 0.5).adjacency_window(3, 3)


class TestLimits:
    def test_constant_two_components(self):
        sig = make_constant(NeighborGraph(4, frozenset({(1, 2), (3, 4)})))
        assert verify_finally_jointly_connected(sig, 10) is JointConnectivity.PROVEN_NO

    def test_trace_tail_is_approximate(self):
        graphs = [complete_graph(4)] * 50 + [empty_graph(4)] * 50
        limit = limit_graph(make_trace(graphs, TailPolicy.HOLD_LAST), 100)
        assert not limit.exact
        assert limit.graph == empty_graph(4)

    def test_trace_with_empty_tail_is_proven_no(self):
        graphs = [make_random(5, 9, 0.5).at(t) for t in range(1000)]
        sig = make_trace(graphs, TailPolicy.EMPTY)
        assert verify_finally_jointly_connected(sig, 1000) is JointConnectivity.PROVEN_NO

    def test_trace_with_connected_tail_is_unknown(self):
        sig = make_trace([cycle_graph(4)], TailPolicy.HOLD_LAST)
        assert verify_finally_jointly_connected(sig, 10) is JointConnectivity.UNKNOWN_AT_HORIZON

    def test_exact_limit_edges_recur(self, sparse_star):
        horizon = 256
        limit = limit_graph(sparse_star, horizon).graph
        for start in range(0, horizon + 1, 32):
            assert is_subgraph(limit, window_union(sparse_star, start, horizon + 1))

    def test_invalid_arguments(self, sparse_star):
        with pytest.raises(DomainError):
            limit_graph(sparse_star, 0)
        with pytest.raises(DomainError):
            window_union(sparse_star, 5, 5)
        with pytest.raises(DomainError):
            first_disconnected_window(sparse_star, 0, 10)
