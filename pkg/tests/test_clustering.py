"""Ball clustering tests."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkclust import (
    Hypergraph,
    InvalidInput,
    catalog,
    hamming_clustering,
    turan_graph,
)


class TestExamples:
    def test_unbalanced_bipartite(self):
        # sides at distance 5 > (2/5)*5; within-side distance 0
        part = hamming_clustering(turan_graph(5, 2), 2, Fraction(2, 5))
        assert part.classes == ((0, 1, 2), (3, 4))

    def test_empty_graph_first_ball_takes_everything(self):
        part = hamming_clustering(Hypergraph(2, 5, []), 2, 0)
        assert part.classes == ((0, 1, 2, 3, 4), ())

    def test_triangle_splits_into_singletons(self):
        part = hamming_clustering(catalog("complete", n=3), 3, Fraction(1, 4))
        assert part.classes == ((0,), (1,), (2,))

    def test_last_class_absorbs_remainder(self):
        # radius 0 on a path: balls around 0 and 1 are singletons, the rest pools
        path = Hypergraph(2, 5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        part = hamming_clustering(path, 3, 0)
        assert part.classes == ((0,), (1,), (2, 3, 4))

    def test_three_uniform_blowup(self):
        from linkclust import Pattern, pattern_blowup

        host = pattern_blowup(Pattern.single_edge(3), (2, 2, 2))
        part = hamming_clustering(host, 3, Fraction(1, 36))
        assert part.classes == ((0, 1), (2, 3), (4, 5))


class TestValidation:
    def test_delta_range(self):
        with pytest.raises(InvalidInput):
            hamming_clustering(catalog("complete", n=3), 2, Fraction(3, 2))
        with pytest.raises(InvalidInput):
            hamming_clustering(catalog("complete", n=3), 2, -1)

    def test_class_count(self):
        with pytest.raises(InvalidInput):
            hamming_clustering(catalog("complete", n=3), 1, 0)


@st.composite
def graphs(draw):
    n = draw(st.integers(min_value=2, max_value=9))
    pool = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool)))
    return Hypergraph(2, n, edges)


class TestInvariants:
    @given(
        graphs(),
        st.integers(min_value=2, max_value=4),
        st.fractions(min_value=0, max_value=1),
    )
    @settings(max_examples=80, deadline=None)
    def test_output_is_a_partition(self, g, num_classes, delta):
        part = hamming_clustering(g, num_classes, delta)
        assert part.num_classes == num_classes
        assert sorted(v for c in part.classes for v in c) == list(range(g.n))

    @given(graphs(), st.integers(min_value=2, max_value=4))
    @settings(max_examples=40, deadline=None)
    def test_edge_input_order_is_irrelevant(self, g, num_classes):
        shuffled = Hypergraph(2, g.n, list(reversed(g.edge_list())))
        a = hamming_clustering(g, num_classes, Fraction(1, 3))
        b = hamming_clustering(shuffled, num_classes, Fraction(1, 3))
        assert a == b

    def test_deterministic(self):
        g = turan_graph(30, 3)
        assert hamming_clustering(g, 3, Fraction(1, 4)) == hamming_clustering(
            g, 3, Fraction(1, 4)
        )
