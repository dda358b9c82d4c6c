"""Pattern type, weight polynomial, gradient, and twin tests."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkclust import (
    Hypergraph,
    InvalidInput,
    Pattern,
    SimplexPoint,
    has_twins,
    lagrange_eval,
    lagrange_grad,
)
from helpers import interior_points

MULTI = Pattern(3, 2, [(2, 1)])  # one edge using vertex 0 twice, vertex 1 once

FIXTURES = [
    Pattern.complete_graph(2),
    Pattern.complete_graph(4),
    Pattern.cycle(4),
    Pattern.cycle(5),
    Pattern.path(3),
    Pattern.single_edge(3),
    MULTI,
    Pattern(3, 3, [(2, 1, 0), (1, 2, 0), (0, 2, 1)]),
]


class TestSimplexPoint:
    def test_valid(self):
        p = SimplexPoint([0.25, 0.75])
        assert p.coords == (0.25, 0.75) and len(p) == 2 and p[1] == 0.75

    def test_sum_tolerance(self):
        SimplexPoint([0.5, 0.5 + 4e-13])
        with pytest.raises(InvalidInput):
            SimplexPoint([0.5, 0.6])

    def test_negative_rejected(self):
        with pytest.raises(InvalidInput):
            SimplexPoint([1.2, -0.2])

    def test_normalized(self):
        p = SimplexPoint.normalized([2.0, 2.0, -1e-15])
        assert p.coords == (0.5, 0.5, 0.0)
        with pytest.raises(InvalidInput):
            SimplexPoint.normalized([0.0, 0.0])

    def test_uniform(self):
        assert SimplexPoint.uniform(4).coords == (0.25,) * 4


class TestPatternType:
    def test_multiplicities_validated(self):
        with pytest.raises(InvalidInput):
            Pattern(3, 2, [(1, 1)])  # sums to 2, not 3
        with pytest.raises(InvalidInput):
            Pattern(2, 2, [(1, -1)])
        with pytest.raises(InvalidInput):
            Pattern(2, 2, [(1, 1), (1, 1)])

    def test_from_multisets(self):
        p = Pattern.from_multisets(3, 2, [(0, 0, 1)])
        assert p == MULTI

    def test_hypergraph_round_trip(self):
        k4 = Pattern.complete_graph(4)
        assert Pattern.from_hypergraph(k4.to_hypergraph()) == k4

    def test_multiset_pattern_has_no_hypergraph_form(self):
        with pytest.raises(InvalidInput):
            MULTI.to_hypergraph()

    def test_vertex_deleted(self):
        p3 = Pattern.path(3)
        end_removed = p3.vertex_deleted(2)
        assert end_removed.edges == ((1, 1),)
        mid_removed = p3.vertex_deleted(1)
        assert mid_removed.edges == ()

    def test_structure_predicates(self):
        assert Pattern.complete_graph(3).is_complete_graph()
        assert not Pattern.cycle(4).is_complete_graph()
        assert Pattern.single_edge(4).is_single_transversal_edge()
        assert not MULTI.is_single_transversal_edge()
        assert MULTI.max_multiplicities() == (2, 1)


class TestEval:
    def test_triangle_uniform(self):
        val = lagrange_eval(Pattern.complete_graph(3), SimplexPoint.uniform(3))
        assert val == pytest.approx(1 / 3, abs=1e-15)

    def test_single_transversal_uniform(self):
        val = lagrange_eval(Pattern.single_edge(3), SimplexPoint.uniform(3))
        assert val == pytest.approx(1 / 27, abs=1e-15)

    def test_multiset_edge_half_half(self):
        # (1/2)^2/2! * (1/2) = 1/16
        val = lagrange_eval(MULTI, SimplexPoint([0.5, 0.5]))
        assert val == pytest.approx(1 / 16, abs=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInput):
            lagrange_eval(MULTI, SimplexPoint.uniform(3))

    def test_empty_pattern(self):
        assert lagrange_eval(Pattern(2, 3, []), SimplexPoint.uniform(3)) == 0.0


class TestGrad:
    @pytest.mark.parametrize("num", [2, 3, 4, 5])
    def test_complete_graph_uniform(self, num):
        grad = lagrange_grad(Pattern.complete_graph(num), SimplexPoint.uniform(num))
        for g in grad:
            assert g == pytest.approx(1 - 1 / num, abs=1e-14)

    def test_single_transversal_uniform(self):
        grad = lagrange_grad(Pattern.single_edge(3), SimplexPoint.uniform(3))
        assert all(g == pytest.approx(1 / 9, abs=1e-15) for g in grad)

    def test_basis_vector_reads_off_the_link(self):
        # edges {0,1} and {0,2}: at a basis vector the partial for 0 sums the
        # monomials with one copy of 0 removed
        p = Pattern.from_multisets(2, 3, [(0, 1), (0, 2)])
        grad = lagrange_grad(p, SimplexPoint([1.0, 0.0, 0.0]))
        assert grad == (0.0, 1.0, 1.0)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInput):
            lagrange_grad(MULTI, SimplexPoint.uniform(3))

    @pytest.mark.parametrize("pattern", FIXTURES, ids=repr)
    def test_matches_central_differences(self, pattern):
        h = 1e-5
        for x in interior_points(pattern.num_vertices, 25, seed=5):
            grad = lagrange_grad(pattern, tuple(x))
            for i in range(pattern.num_vertices):
                up = list(x)
                dn = list(x)
                up[i] += h
                dn[i] -= h
                fd = (lagrange_eval(pattern, up) - lagrange_eval(pattern, dn)) / (2 * h)
                rel = abs(grad[i] - fd) / max(abs(grad[i]), 1e-9)
                assert rel <= 1e-4

    @pytest.mark.parametrize("pattern", FIXTURES, ids=repr)
    def test_euler_identity(self, pattern):
        # sum_i x_i * d_i equals r times the polynomial, degree homogeneity
        for x in interior_points(pattern.num_vertices, 50, seed=11):
            lhs = math.fsum(
                xi * gi for xi, gi in zip(x, lagrange_grad(pattern, tuple(x)))
            )
            rhs = pattern.r * lagrange_eval(pattern, tuple(x))
            assert abs(lhs - rhs) <= 1e-10


class TestTwins:
    def test_even_cycle_has_twins(self):
        assert has_twins(Pattern.cycle(4))

    def test_complete_graphs_do_not(self):
        for num in (2, 3, 4, 5):
            assert not has_twins(Pattern.complete_graph(num))

    def test_odd_cycle_does_not(self):
        assert not has_twins(Pattern.cycle(5))

    def test_path_endpoints_are_twins(self):
        assert has_twins(Pattern.path(3))

    def test_multiset_twins_through_a_shared_edge(self):
        # edges {0,0,2}, {0,1,2}, {1,1,2}: vertices 0 and 1 have equal links
        p = Pattern.from_multisets(3, 3, [(0, 0, 2), (0, 1, 2), (1, 1, 2)])
        assert has_twins(p)
        # and the polynomial really only depends on x0 + x1
        a = lagrange_eval(p, (0.3, 0.2, 0.5))
        b = lagrange_eval(p, (0.1, 0.4, 0.5))
        assert a == pytest.approx(b, abs=1e-15)
