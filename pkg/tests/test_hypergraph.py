"""Core storage and elementary query tests."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkclust import (
    Hypergraph,
    InvalidInput,
    InvalidVertex,
    Partition,
    catalog,
    turan_graph,
)

K3 = Hypergraph(2, 3, [(0, 1), (0, 2), (1, 2)])
TRIPLE = Hypergraph(3, 4, [(0, 1, 2)])
FANO = catalog("fano")


@st.composite
def hypergraphs(draw):
    r = draw(st.sampled_from([2, 3]))
    n = draw(st.integers(min_value=r, max_value=8))
    pool = list(itertools.combinations(range(n), r))
    edges = draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool)))
    return Hypergraph(r, n, edges)


class TestConstruction:
    def test_canonicalizes_edge_order(self):
        g = Hypergraph(2, 3, [(2, 0), (1, 2), (1, 0)])
        assert g.edge_list() == [(0, 1), (0, 2), (1, 2)]

    def test_rejects_repeated_vertex(self):
        with pytest.raises(InvalidInput, match="repeated"):
            Hypergraph(2, 3, [(0, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidInput):
            Hypergraph(2, 3, [(0, 3)])
        with pytest.raises(InvalidInput):
            Hypergraph(2, 3, [(-1, 2)])

    def test_rejects_multi_edges(self):
        with pytest.raises(InvalidInput, match="duplicate"):
            Hypergraph(2, 3, [(0, 1), (1, 0)])

    def test_rejects_wrong_arity(self):
        with pytest.raises(InvalidInput):
            Hypergraph(3, 4, [(0, 1)])

    def test_rejects_bad_uniformity(self):
        with pytest.raises(InvalidInput):
            Hypergraph(1, 3, [])

    def test_equality_and_hash(self):
        a = Hypergraph(2, 3, [(0, 1)])
        b = Hypergraph(2, 3, [(1, 0)])
        assert a == b and hash(a) == hash(b)
        assert a != Hypergraph(2, 3, [(0, 2)])

    def test_constant_time_edge_query_backing(self):
        g = turan_graph(10, 2)
        assert g.packed_adjacency.shape == (10, 2)
        assert g.has_edge((0, 9)) and not g.has_edge((0, 1))
        with pytest.raises(InvalidInput):
            TRIPLE.packed_adjacency


class TestDegree:
    def test_triangle_degrees(self):
        assert all(K3.degree(v) == 2 for v in range(3))

    def test_isolated_vertex(self):
        assert TRIPLE.degree(3) == 0

    def test_fano_degrees(self):
        # expected values recomputed straight off the edge list
        for v in range(7):
            expected = sum(1 for e in FANO if v in e)
            assert FANO.degree(v) == expected == 3

    def test_invalid_vertex(self):
        with pytest.raises(InvalidVertex):
            K3.degree(3)
        with pytest.raises(InvalidVertex):
            K3.degree(-1)

    def test_min_degree_turan_6_3(self):
        assert turan_graph(6, 3).min_degree() == 4

    def test_min_degree_empty_graph(self):
        assert Hypergraph(2, 5, []).min_degree() == 0

    def test_min_degree_cycle(self):
        assert catalog("cycle", k=5).min_degree() == 2

    def test_min_max_average(self):
        g = TRIPLE
        assert g.min_degree() == 0
        assert g.max_degree() == 1
        assert g.average_degree() == pytest.approx(3 / 4)

    def test_empty_vertex_set_errors(self):
        g = Hypergraph(2, 0, [])
        for op in (g.min_degree, g.max_degree, g.average_degree):
            with pytest.raises(InvalidInput):
                op()


class TestLink:
    def test_triangle_link(self):
        assert K3.link(0) == {(1,), (2,)}

    def test_single_edge_link(self):
        assert TRIPLE.link(0) == {(1, 2)}

    def test_fano_link(self):
        expected = {tuple(sorted(set(e) - {1})) for e in FANO if 1 in e}
        assert FANO.link(1) == expected
        assert len(expected) == 3

    def test_invalid_vertex(self):
        with pytest.raises(InvalidVertex):
            K3.link(5)


class TestHammingDistance:
    def test_same_side_twins(self):
        k23 = turan_graph(5, 2)  # sides {0,1,2} and {3,4}
        assert k23.hamming_distance(3, 4) == 0

    def test_opposite_sides(self):
        k23 = turan_graph(5, 2)
        assert k23.hamming_distance(3, 0) == 5

    def test_triangle_adjacent_pair(self):
        # adjacency makes the pair's own positions count, giving 2
        assert K3.hamming_distance(0, 1) == 2

    def test_requires_distinct_vertices(self):
        with pytest.raises(InvalidInput):
            K3.hamming_distance(1, 1)

    def test_three_uniform(self):
        g = Hypergraph(3, 5, [(0, 1, 2), (0, 1, 3), (2, 3, 4)])
        # links: L(0) = {12, 13}, L(4) = {23}
        assert g.hamming_distance(0, 4) == 3
        assert g.hamming_distance(2, 3) == 2  # {01,34} vs {01,24}

    def test_distances_from_matches_pairwise(self):
        g = catalog("fano")
        d = g.distances_from(2)
        for u in range(7):
            expected = 0 if u == 2 else g.hamming_distance(u, 2)
            assert d[u] == expected


class TestInduced:
    def test_complete_graph_restriction(self):
        k4 = catalog("complete", n=4)
        sub, mapping = k4.induced([0, 2, 3])
        assert sub == Hypergraph(2, 3, [(0, 1), (0, 2), (1, 2)])
        assert mapping == {0: 0, 2: 1, 3: 2}

    def test_cycle_adjacent_pair(self):
        sub, _ = catalog("cycle", k=5).induced([1, 2])
        assert sub.edge_list() == [(0, 1)]

    def test_fano_single_edge(self):
        sub, _ = FANO.induced([0, 1, 2])
        assert sub.edge_list() == [(0, 1, 2)]

    def test_empty_subset(self):
        sub, mapping = K3.induced([])
        assert sub.n == 0 and len(sub) == 0 and mapping == {}

    def test_out_of_range_subset(self):
        with pytest.raises(InvalidVertex):
            K3.induced([0, 7])


class TestInvariants:
    @given(hypergraphs())
    @settings(max_examples=60, deadline=None)
    def test_distance_symmetry_and_inclusion_exclusion(self, g):
        for u in range(g.n):
            for v in range(u + 1, g.n):
                duv = g.hamming_distance(u, v)
                assert duv == g.hamming_distance(v, u)
                common = len(g.link(u) & g.link(v))
                assert duv == g.degree(u) + g.degree(v) - 2 * common

    @given(hypergraphs())
    @settings(max_examples=60, deadline=None)
    def test_degree_sum(self, g):
        assert sum(g.degree(v) for v in range(g.n)) == g.r * len(g)

    @given(hypergraphs())
    @settings(max_examples=40, deadline=None)
    def test_induced_on_everything_is_identity(self, g):
        sub, mapping = g.induced(range(g.n))
        assert sub == g
        assert mapping == {v: v for v in range(g.n)}


class TestPartition:
    def test_valid(self):
        p = Partition([[0, 1], [2], []], 3)
        assert p.classes == ((0, 1), (2,), ())
        assert p.sizes() == (2, 1, 0)
        assert not p.has_full_support()
        assert Partition([[0, 1], [2]], 3).has_full_support()

    def test_labels_round_trip(self):
        p = Partition([[0, 2], [1]], 3)
        assert list(p.labels) == [0, 1, 0]
        assert Partition.from_labels(np.array([0, 1, 0]), 2) == p

    def test_overlap_rejected(self):
        with pytest.raises(InvalidInput):
            Partition([[0, 1], [1, 2]], 3)

    def test_missing_vertex_rejected(self):
        with pytest.raises(InvalidInput):
            Partition([[0], [2]], 3)

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidVertex):
            Partition([[0, 5]], 2)

    def test_nonempty_class_sets(self):
        p = Partition([[1], [0, 2], []], 3)
        q = Partition([[0, 2], [], [1]], 3)
        assert p.nonempty_class_sets() == q.nonempty_class_sets()
