"""Reference-implementation tests: searches, exact counts, grid bounds."""

import itertools
import math

import pytest

from linkclust import (
    Hypergraph,
    InvalidInput,
    OptConfig,
    OracleTimeout,
    Pattern,
    catalog,
    find_embedding,
    find_homomorphism,
    lagrangian,
    lagrangian_grid,
    pattern_blowup,
    phi,
    phi_grid,
    turan_graph,
    turan_number,
)
from helpers import brute_force_max_edges_without, is_valid_coloring, is_valid_embedding

K3 = catalog("complete", n=3)
C5 = catalog("cycle", k=5)


class TestFindEmbedding:
    def test_no_triangle_in_pentagon(self):
        assert find_embedding(K3, C5) is None

    def test_triangle_in_k4(self):
        emb = find_embedding(K3, catalog("complete", n=4))
        assert emb is not None and is_valid_embedding(K3, catalog("complete", n=4), emb)

    def test_generalized_triangle_avoids_transversal_blowup(self):
        host = pattern_blowup(Pattern.single_edge(3), (2, 2, 2))
        assert find_embedding(catalog("generalized_triangle", r=3), host) is None

    def test_three_uniform_present(self):
        t3 = catalog("generalized_triangle", r=3)
        emb = find_embedding(t3, t3)
        assert emb is not None and is_valid_embedding(t3, t3, emb)

    def test_uniformity_mismatch(self):
        with pytest.raises(InvalidInput):
            find_embedding(K3, catalog("fano"))

    def test_deterministic(self):
        host = turan_graph(12, 3)
        assert find_embedding(K3, host) == find_embedding(K3, host)

    def test_too_large_pattern(self):
        assert find_embedding(catalog("complete", n=5), catalog("complete", n=4)) is None


class TestFindHomomorphism:
    def test_pentagon_needs_three_colors(self):
        assert find_homomorphism(C5, Pattern.complete_graph(2)) is None
        colors = find_homomorphism(C5, Pattern.complete_graph(3))
        assert colors is not None
        assert is_valid_coloring(C5, Pattern.complete_graph(3), colors)

    def test_surjective_vs_plain_on_bipartite_host(self):
        k33 = turan_graph(6, 2)
        target = Pattern.cycle(5)
        plain = find_homomorphism(k33, target, surjective=False)
        assert plain is not None and is_valid_coloring(k33, target, plain)
        assert find_homomorphism(k33, target, surjective=True) is None

    def test_surjective_on_blowup(self):
        host = pattern_blowup(Pattern.cycle(5), (2, 2, 2, 2, 2))
        colors = find_homomorphism(host, Pattern.cycle(5), surjective=True)
        assert colors is not None
        assert is_valid_coloring(host, Pattern.cycle(5), colors)
        assert set(colors) == set(range(5))

    def test_multiset_pattern(self):
        # host edge {0,1,2} with two vertices forced into one class
        host = Hypergraph(3, 3, [(0, 1, 2)])
        doubled = Pattern.from_multisets(3, 2, [(0, 0, 1)])
        colors = find_homomorphism(host, doubled)
        assert colors is not None and is_valid_coloring(host, doubled, colors)

    def test_uniformity_mismatch(self):
        with pytest.raises(InvalidInput):
            find_homomorphism(catalog("fano"), Pattern.complete_graph(3))

    def test_timeout(self):
        # ten unconstrained vertices in front of an unsatisfiable edge
        host = Hypergraph(2, 12, [(10, 11)])
        with pytest.raises(OracleTimeout):
            find_homomorphism(host, Pattern(2, 5, []), budget_s=0.0)


class TestTuranNumber:
    def test_small_against_exhaustive(self):
        assert turan_number(5, 2) == brute_force_max_edges_without(K3, 5) == 6

    def test_named_values(self):
        assert turan_number(6, 3) == 12
        assert turan_number(3, 3) == 3

    def test_floor_formula(self):
        for parts in range(1, 7):
            for n in range(0, 60):
                assert turan_number(n, parts) == (parts - 1) * n * n // (2 * parts)

    def test_single_vertex_removal_identity(self):
        for parts in range(1, 7):
            for n in range(1, 60):
                drop = turan_number(n, parts) - turan_number(n - 1, parts)
                assert drop == n - math.ceil(n / parts)

    def test_extremal_graphs_avoid_next_clique(self):
        for parts in range(2, 5):
            clique = catalog("complete", n=parts + 1)
            for n in (parts, 11, 25, 40):
                assert find_embedding(clique, turan_graph(n, parts)) is None

    def test_invalid(self):
        with pytest.raises(InvalidInput):
            turan_number(-1, 2)
        with pytest.raises(InvalidInput):
            turan_number(4, 0)


class TestGridSearch:
    def test_triangle_grid(self):
        assert abs(lagrangian_grid(Pattern.complete_graph(3), 300) - 1 / 3) <= 1e-5

    def test_transversal_grid(self):
        assert abs(lagrangian_grid(Pattern.single_edge(3), 300) - 1 / 27) <= 1e-5

    def test_empty_pattern(self):
        assert lagrangian_grid(Pattern(2, 3, []), 10) == 0.0

    def test_maximin_grid(self):
        assert abs(phi_grid(Pattern.complete_graph(3), 300) - 2 / 3) <= 1e-5
        assert abs(phi_grid(Pattern.cycle(4), 100) - 1 / 2) <= 1e-12

    def test_grid_never_exceeds_optimizer(self):
        cfg = OptConfig()
        for pattern in (
            Pattern.complete_graph(4),
            Pattern.cycle(5),
            Pattern.path(3),
            Pattern.single_edge(3),
            Pattern(3, 2, [(2, 1)]),
        ):
            assert lagrangian_grid(pattern, 60) <= lagrangian(pattern, cfg).value + 1e-9
            assert phi_grid(pattern, 60) <= phi(pattern, cfg).value + 1e-9

    def test_point_cap(self):
        with pytest.raises(InvalidInput):
            lagrangian_grid(Pattern.complete_graph(6), 300)
        with pytest.raises(InvalidInput):
            lagrangian_grid(Pattern.complete_graph(3), 0)
