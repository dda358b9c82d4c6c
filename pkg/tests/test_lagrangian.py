"""Optimization layer tests: fixture values, minimality, rigidity."""

from fractions import Fraction

import pytest

from linkclust import (
    InvalidInput,
    OptConfig,
    Pattern,
    SimplexPoint,
    is_minimal,
    lagrange_eval,
    lagrange_grad,
    lagrangian,
    lagrangian_grid,
    phi,
    phi_grid,
    rigidity_report,
)

CFG = OptConfig()
NUMERIC = OptConfig(closed_forms=False)


class TestLagrangian:
    @pytest.mark.parametrize("num", [2, 3, 4, 5, 6])
    def test_complete_graph_closed_form(self, num):
        rep = lagrangian(Pattern.complete_graph(num), CFG)
        assert rep.value_exact == Fraction(num - 1, 2 * num)
        assert rep.value == pytest.approx((num - 1) / (2 * num), abs=1e-12)

    @pytest.mark.parametrize("num", [2, 3, 4, 5, 6])
    def test_optimizer_agrees_with_closed_form(self, num):
        rep = lagrangian(Pattern.complete_graph(num), NUMERIC)
        assert rep.value_exact is None
        assert abs(rep.value - (num - 1) / (2 * num)) <= 1e-6
        assert rep.converged and rep.restarts_used == NUMERIC.restarts

    def test_single_transversal(self):
        assert lagrangian(Pattern.single_edge(3), CFG).value_exact == Fraction(1, 27)
        assert abs(lagrangian(Pattern.single_edge(3), NUMERIC).value - 1 / 27) <= 1e-6

    def test_empty_pattern(self):
        rep = lagrangian(Pattern(2, 4, []), CFG)
        assert rep.value == 0.0 and rep.value_exact == 0

    def test_cycle_values(self):
        # odd cycles top out on a single edge, value 1/4
        assert abs(lagrangian(Pattern.cycle(5), CFG).value - 0.25) <= 1e-9
        assert abs(lagrangian(Pattern.cycle(7), CFG).value - 0.25) <= 1e-9

    def test_value_matches_argmax_evaluation(self):
        for pattern in (Pattern.cycle(5), Pattern.single_edge(3), Pattern(3, 2, [(2, 1)])):
            rep = lagrangian(pattern, NUMERIC)
            assert abs(rep.value - lagrange_eval(pattern, rep.argmax)) <= 1e-10

    def test_grid_oracle_is_a_lower_bound(self):
        for pattern in (Pattern.cycle(4), Pattern.path(3), Pattern(3, 2, [(2, 1)])):
            assert lagrangian_grid(pattern, 60) <= lagrangian(pattern, CFG).value + 1e-9


class TestPhi:
    @pytest.mark.parametrize("num", [2, 3, 4, 5, 6])
    def test_complete_graph_closed_form(self, num):
        rep = phi(Pattern.complete_graph(num), CFG)
        assert rep.value_exact == Fraction(num - 1, num)

    def test_optimizer_matches_closed_forms(self):
        assert abs(phi(Pattern.complete_graph(3), NUMERIC).value - 2 / 3) <= 1e-6
        assert abs(phi(Pattern.single_edge(3), NUMERIC).value - 1 / 9) <= 1e-6

    def test_cycle_five(self):
        rep = phi(Pattern.cycle(5), CFG)
        assert abs(rep.value - 2 / 5) <= 1e-6
        assert max(abs(c - 0.2) for c in rep.argmax.coords) <= 1e-6

    def test_cycle_four_flat_optimum(self):
        rep = phi(Pattern.cycle(4), CFG)
        assert abs(rep.value - 0.5) <= 1e-6
        # the optimal set is a continuum; restarts land on distinct points
        assert len(rep.witness_set) > 1
        uniform = SimplexPoint.uniform(4)
        assert any(
            max(abs(a - b) for a, b in zip(w.coords, uniform.coords)) > 1e-2
            for w in rep.witness_set
        )

    def test_value_is_min_partial_at_argmax(self):
        for pattern in (Pattern.cycle(5), Pattern.cycle(4), Pattern.single_edge(3)):
            rep = phi(pattern, NUMERIC)
            assert abs(rep.value - min(lagrange_grad(pattern, rep.argmax))) <= 1e-10

    def test_grid_oracle_is_a_lower_bound(self):
        for pattern in (Pattern.cycle(5), Pattern.path(3)):
            assert phi_grid(pattern, 60) <= phi(pattern, CFG).value + 1e-9


class TestMinimality:
    def test_complete_graphs_are_minimal(self):
        for num in (2, 3, 4, 5):
            rep = is_minimal(Pattern.complete_graph(num), CFG)
            assert rep.minimal and rep.margin > 1e-3

    def test_path_is_not(self):
        # deleting an endpoint leaves a single edge with the same maximum
        rep = is_minimal(Pattern.path(3), CFG)
        assert not rep.minimal and abs(rep.margin) <= 1e-9

    def test_odd_cycle_is_not(self):
        assert not is_minimal(Pattern.cycle(5), CFG).minimal

    def test_single_transversal_is_minimal(self):
        rep = is_minimal(Pattern.single_edge(3), CFG)
        assert rep.minimal

    def test_minimal_patterns_balance_value_and_maximin(self):
        for pattern in (
            Pattern.complete_graph(3),
            Pattern.complete_graph(4),
            Pattern.single_edge(3),
        ):
            assert is_minimal(pattern, CFG).minimal
            gap = pattern.r * lagrangian(pattern, CFG).value - phi(pattern, CFG).value
            assert abs(gap) <= 2e-6

    def test_needs_two_vertices(self):
        with pytest.raises(InvalidInput):
            is_minimal(Pattern(2, 1, [(2,)]), CFG)


class TestRigidity:
    @pytest.mark.parametrize(
        "pattern",
        [Pattern.complete_graph(k) for k in (2, 3, 4, 5)]
        + [Pattern.cycle(5), Pattern.cycle(7), Pattern.single_edge(3)],
        ids=repr,
    )
    def test_rigid_fixtures(self, pattern):
        rep = rigidity_report(pattern, CFG)
        assert rep.rigid and rep.certificate is None
        assert rep.smallest_coordinate > 1e-3

    def test_even_cycle_fails_through_twins(self):
        rep = rigidity_report(Pattern.cycle(4), CFG)
        assert not rep.rigid
        assert rep.certificate["kind"] == "twins"
        assert rep.smallest_coordinate == pytest.approx(0.0, abs=1e-12)
        assert min(min(w.coords) for w in rep.witness_set) <= 1e-12

    def test_path_fails(self):
        rep = rigidity_report(Pattern.path(3), CFG)
        assert not rep.rigid

    def test_twins_force_non_rigid(self):
        shared = Pattern.from_multisets(3, 3, [(0, 0, 2), (0, 1, 2), (1, 1, 2)])
        assert not rigidity_report(shared, CFG).rigid

    def test_report_is_flagged_numerical(self):
        assert "not a proof" in rigidity_report(Pattern.cycle(5), CFG).note

    def test_empty_pattern_is_not_rigid(self):
        rep = rigidity_report(Pattern(2, 3, []), CFG)
        assert not rep.rigid
