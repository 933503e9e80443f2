"""Tests for the Lagrangian lower bound."""

import pytest

from conftest import oracle_instance, oracle_params

from bss_planner.exceptions import ConfigurationError
from bss_planner.instances.generator import GenParams, generate
from bss_planner.network.costs import CostTables
from bss_planner.network.evaluation import check_feasibility
from bss_planner.solvers.bruteforce import solve_bruteforce
from bss_planner.solvers.heuristics import greedy_construct, local_search
from bss_planner.solvers.lagrangian import (
    StepRule,
    dual_value,
    lagrangian_lower_bound,
    solve_with_bound,
)
from bss_planner.solvers.reports import Multipliers


class TestDualValue:
    """Tests for dual_value."""

    def test_zero_multipliers_give_zero(self, generated_instance):
        """Test L(0) = 0 when every cost is non-negative."""
        tables = CostTables(generated_instance)
        evaluation = dual_value(tables, [0.0] * tables.n_bts)
        assert evaluation.value == 0.0
        assert evaluation.subgradient == (1.0,) * tables.n_bts

    def test_every_multiplier_vector_bounds_optimum(self):
        """Test L(lambda) <= optimum for arbitrary multipliers."""
        inst = oracle_instance(5, 3, seed=12)
        tables = CostTables(inst)
        optimum = solve_bruteforce(inst).solution.objective
        for scale in (10.0, 500.0, 2000.0, 10_000.0):
            assert dual_value(tables, [scale] * tables.n_bts).value <= optimum + 1e-6

    def test_wrong_length_rejected(self, generated_instance):
        """Test that a multiplier vector of the wrong size raises ConfigurationError."""
        with pytest.raises(ConfigurationError):
            dual_value(CostTables(generated_instance), [0.0])


class TestLagrangianLowerBound:
    """Tests for lagrangian_lower_bound."""

    def test_single_pair_converges(self, single_pair):
        """Test the bound reaches within 1% of the optimum in 200 iterations."""
        optimum = solve_bruteforce(single_pair).solution.objective
        bound, multipliers = lagrangian_lower_bound(single_pair, 200, StepRule(kind="polyak"))
        assert optimum * 0.99 <= bound <= optimum + 1e-9
        assert len(multipliers.values) == 1

    def test_single_pair_converges_with_large_step(self, single_pair):
        """Test the diminishing rule with a step scaled to the costs."""
        optimum = solve_bruteforce(single_pair).solution.objective
        bound, _ = lagrangian_lower_bound(single_pair, 200, StepRule(mu0=2000.0))
        assert optimum * 0.99 <= bound <= optimum + 1e-9

    def test_one_iteration_at_zero(self, generated_instance):
        """Test that one iteration from zero multipliers reports L(0) = 0."""
        bound, multipliers = lagrangian_lower_bound(generated_instance, 1)
        assert bound == 0.0
        assert multipliers == Multipliers.zeros(5)

    @pytest.mark.parametrize("kind", ["diminishing", "polyak"])
    def test_sandwich_against_oracle(self, kind):
        """Test bound <= optimum <= local search <= greedy on small instances."""
        for params in oracle_params()[:24]:
            inst = oracle_instance(*params)
            greedy = greedy_construct(inst)
            local = local_search(inst, greedy)
            optimum = solve_bruteforce(inst).solution.objective
            bound, _ = lagrangian_lower_bound(inst, 60, StepRule(kind=kind, mu0=100.0))
            assert bound <= optimum + 1e-6
            assert optimum <= local.objective + 1e-9 <= greedy.objective + 2e-9

    @pytest.mark.slow
    def test_sandwich_full_oracle_set(self):
        """Test bound <= optimum <= local <= greedy on every oracle instance with defaults."""
        for params in oracle_params():
            inst = oracle_instance(*params)
            greedy = greedy_construct(inst)
            local = local_search(inst, greedy)
            assert check_feasibility(inst, greedy) == [], params
            assert check_feasibility(inst, local) == [], params
            optimum = solve_bruteforce(inst).solution.objective
            bound, _ = lagrangian_lower_bound(inst)
            assert bound <= optimum + 1e-6, params
            assert optimum <= local.objective + 1e-9, params
            assert local.objective <= greedy.objective + 1e-9, params

    def test_polyak_improves_on_zero(self):
        """Test that the polyak rule lifts the bound above L(0)."""
        inst = generate(GenParams(n_bts=8, seed=3))
        bound, _ = lagrangian_lower_bound(inst, 100, StepRule(kind="polyak"))
        assert bound > 0.0

    def test_iterations_must_be_positive(self, generated_instance):
        """Test that zero iterations raise ConfigurationError."""
        with pytest.raises(ConfigurationError):
            lagrangian_lower_bound(generated_instance, 0)


class TestStepRule:
    """Tests for StepRule validation."""

    def test_unknown_kind_rejected(self):
        """Test that an unknown rule raises ConfigurationError."""
        with pytest.raises(ConfigurationError):
            StepRule(kind="bundle")

    def test_non_positive_step_rejected(self):
        """Test that mu0 <= 0 raises ConfigurationError."""
        with pytest.raises(ConfigurationError):
            StepRule(mu0=0.0)


class TestSolveWithBound:
    """Tests for solve_with_bound."""

    def test_report_is_consistent(self):
        """Test bound <= objective and a non-negative gap."""
        inst = generate(GenParams(n_bts=10, seed=8))
        report = solve_with_bound(inst, iterations=50, step_rule=StepRule(kind="polyak"))
        assert report.lower_bound <= report.solution.objective
        assert 0.0 <= report.gap <= 1.0
        assert 1 <= report.iterations <= 50

    def test_reports_iterations_actually_run(self, single_pair):
        """Test that an early stop on a zero subgradient is reflected in the report."""
        report = solve_with_bound(single_pair, iterations=200, step_rule=StepRule(mu0=2000.0))
        assert report.iterations < 200
        assert report.lower_bound == pytest.approx(report.solution.objective)
