"""Tests for the network model: costs, completion, evaluation and feasibility."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_instance

from bss_planner.exceptions import (
    InfeasibleAssignmentError,
    InfeasibleInstanceError,
    InstanceError,
)
from bss_planner.instances.generator import GenParams, generate
from bss_planner.network.costs import CostTables, euclidean_distance, link_cost, trunk_cost
from bss_planner.network.evaluation import check_feasibility, complete_assignment, evaluate
from bss_planner.network.types import (
    BscCandidate,
    BscConfig,
    BtsNode,
    CostRates,
    Instance,
    Site,
    Solution,
)


class TestCosts:
    """Tests for link and trunk cost rules."""

    def test_distance(self):
        """Test the planar distance."""
        assert euclidean_distance(Site(1, 0, 0), Site(2, 3, 4)) == 5.0

    def test_link_cost_scales_with_lines(self):
        """Test that an n-line Abis link costs n times one line."""
        rates = CostRates(abis_rate=2.0, a_rate=1.0)
        bsc = BscCandidate(Site(9, 3, 4))
        one = link_cost(BtsNode(Site(1, 0, 0), 5.0, abis_lines=1), bsc, rates)
        three = link_cost(BtsNode(Site(1, 0, 0), 5.0, abis_lines=3), bsc, rates)
        assert one == 10.0
        assert three == 30.0

    def test_trunk_cost(self):
        """Test trunks cost distance x rate x lines and nothing for zero lines."""
        rates = CostRates(abis_rate=1.0, a_rate=3.0)
        bsc = BscCandidate(Site(1, 0, 0))
        msc = Site(0, 0, 2)
        assert trunk_cost(bsc, msc, rates, 0) == 0.0
        assert trunk_cost(bsc, msc, rates, 4) == 24.0

    def test_line_fixed_cost(self):
        """Test the per-line equipment charge on both interfaces."""
        rates = CostRates(abis_rate=1.0, a_rate=1.0, line_fixed_cost=5.0)
        bsc = BscCandidate(Site(1, 0, 0))
        assert link_cost(BtsNode(Site(2, 10, 0), 1.0), bsc, rates) == 15.0
        assert trunk_cost(bsc, Site(0, 10, 0), rates, 2) == 30.0

    def test_colocated_link_is_free(self):
        """Test that a BTS on its BSC site has zero link cost."""
        site = Site(1, 5, 5)
        assert link_cost(BtsNode(site, 10.0), BscCandidate(site), CostRates(10, 10)) == 0.0


class TestInstanceValidation:
    """Tests for Instance invariants."""

    def test_collections_sorted_by_id(self):
        """Test that BTS and candidates are stored in id order."""
        inst = make_instance([(3, 0, 0, 1.0), (1, 1, 0, 1.0), (2, 2, 0, 1.0)])
        assert [b.id for b in inst.bts] == [1, 2, 3]
        assert [b.id for b in inst.bsc] == [1, 2, 3]

    def test_duplicate_bts_rejected(self):
        """Test that duplicate BTS ids raise InstanceError."""
        with pytest.raises(InstanceError):
            make_instance([(1, 0, 0, 1.0), (1, 5, 5, 2.0)], bsc=[(1, 0, 0)])

    def test_empty_candidates_rejected(self):
        """Test that an instance without candidates raises InstanceError."""
        with pytest.raises(InstanceError):
            make_instance([(1, 0, 0, 1.0)], bsc=[])

    def test_negative_traffic_rejected(self):
        """Test that negative demand raises InstanceError."""
        with pytest.raises(InstanceError):
            make_instance([(1, 0, 0, -1.0)])

    def test_demand_above_every_model(self):
        """Test that a BTS above the largest model is infeasible."""
        with pytest.raises(InfeasibleInstanceError):
            make_instance([(1, 0, 0, 5000.0)])

    def test_short_capacity_table_rejected(self):
        """Test that a table below the largest model makes the instance infeasible."""
        with pytest.raises(InfeasibleInstanceError):
            make_instance([(1, 0, 0, 1.0)], max_lines=5)


class TestCompleteAssignment:
    """Tests for complete_assignment."""

    def test_single_pair(self, single_pair):
        """Test link + one trunk + small model on the trivial topology."""
        solution = complete_assignment(single_pair, {1: 1})
        assert solution.config_for(1) == BscConfig(lines=1, model="small")
        assert solution.objective == pytest.approx(3 * 10 + 4 * 10 + 1000.0)

    def test_models_follow_traffic(self):
        """Test 500 / 600 / 3000 Erl select the 512 / 2048 / 4096 models."""
        inst = make_instance(
            [(1, 0, 0, 500.0), (2, 50, 0, 600.0), (3, 0, 50, 3000.0)], msc=(25.0, 25.0)
        )
        solution = complete_assignment(inst, {1: 1, 2: 2, 3: 3})
        assert solution.config_for(1).model == "small"
        assert solution.config_for(2).model == "medium"
        assert solution.config_for(3).model == "large"

    def test_fewest_covering_lines(self, capacity_table):
        """Test that each BSC gets the smallest line count covering its traffic."""
        inst = make_instance([(1, 0, 0, 150.0), (2, 1, 0, 20.0)])
        solution = complete_assignment(inst, {1: 1, 2: 1})
        lines = solution.config_for(1).lines
        assert capacity_table[lines].capacity_erl >= 170.0
        assert capacity_table[lines - 1].capacity_erl < 170.0

    def test_unused_bsc_is_empty(self):
        """Test that a BSC without BTS gets no lines and no model."""
        inst = make_instance([(1, 0, 0, 10.0), (2, 1, 0, 10.0)])
        solution = complete_assignment(inst, {1: 1, 2: 1})
        assert solution.config_for(2) == BscConfig(0, None)
        assert solution.opened_bscs() == (1,)

    def test_zero_traffic_bsc_gets_no_model(self):
        """Test that a BSC serving only idle BTS is not equipped."""
        inst = make_instance([(1, 0, 0, 10.0), (2, 1, 0, 0.0)])
        solution = complete_assignment(inst, {1: 1, 2: 2})
        assert solution.config_for(2) == BscConfig(0, None)

    def test_overloaded_bsc_raises(self):
        """Test that traffic above every model raises InfeasibleAssignmentError."""
        inst = make_instance([(1, 0, 0, 3000.0), (2, 1, 0, 3000.0)])
        with pytest.raises(InfeasibleAssignmentError) as exc:
            complete_assignment(inst, {1: 1, 2: 1})
        assert exc.value.bsc_id == 1

    def test_partial_assignment_rejected(self):
        """Test that a map missing a BTS raises InstanceError."""
        inst = make_instance([(1, 0, 0, 10.0), (2, 1, 0, 10.0)])
        with pytest.raises(InstanceError):
            complete_assignment(inst, {1: 1})

    def test_cheaper_model_chosen_when_costs_invert(self):
        """Test that the cheapest covering model wins even when it is larger."""
        from bss_planner.network.types import BscModel

        models = (
            BscModel("small", 512.0, 4000.0),
            BscModel("medium", 2048.0, 3000.0),
            BscModel("large", 4096.0, 5000.0),
        )
        inst = make_instance([(1, 0, 0, 100.0)], models=models)
        assert complete_assignment(inst, {1: 1}).config_for(1).model == "medium"

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10_000), data=st.data())
    def test_no_cheaper_lines_and_model(self, seed, data):
        """Test against every (lines, model) pair that the completion is cheapest per BSC."""
        inst = generate(GenParams(n_bts=6, seed=seed))
        ids = [b.id for b in inst.bsc]
        assignment = {b.id: data.draw(st.sampled_from(ids)) for b in inst.bts}
        solution = complete_assignment(inst, assignment)
        table = inst.capacity_table

        for bsc in inst.bsc:
            load = sum(inst.bts_by_id[i].traffic_erl for i, j in assignment.items() if j == bsc.id)
            cfg = solution.config_for(bsc.id)
            if load == 0:
                assert cfg == BscConfig(0, None)
                continue
            chosen = inst.model_by_id[cfg.model]
            chosen_cost = (
                trunk_cost(bsc, inst.msc, inst.rates, cfg.lines) + chosen.acquisition_cost
            )
            assert table[cfg.lines].capacity_erl >= load - 1e-6
            assert chosen.capacity_erl >= load - 1e-6
            for entry in table.entries:
                for model in inst.models:
                    if entry.capacity_erl < load or model.capacity_erl < load:
                        continue
                    cost = trunk_cost(bsc, inst.msc, inst.rates, entry.lines)
                    assert cost + model.acquisition_cost >= chosen_cost - 1e-9


class TestEvaluate:
    """Tests for evaluate."""

    def test_breakdown_matches_objective(self, generated_instance):
        """Test that the recomputed total equals the completion objective exactly."""
        assignment = {b.id: generated_instance.bsc[0].id for b in generated_instance.bts}
        solution = complete_assignment(generated_instance, assignment)
        breakdown = evaluate(generated_instance, solution)
        assert breakdown.total == solution.objective
        assert breakdown.bsc_cost == 1000.0

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10_000), data=st.data())
    def test_random_assignments_are_feasible(self, seed, data):
        """Test that every completed random assignment passes the feasibility check."""
        inst = generate(GenParams(n_bts=6, seed=seed))
        ids = [b.id for b in inst.bsc]
        assignment = {b.id: data.draw(st.sampled_from(ids)) for b in inst.bts}
        solution = complete_assignment(inst, assignment)
        assert check_feasibility(inst, solution) == []
        assert evaluate(inst, solution).total == solution.objective

    @pytest.mark.parametrize("seed", range(5))
    def test_independent_of_input_order(self, seed):
        """Test the same breakdown from shuffled BTS, BSC and solution orders."""
        base = generate(GenParams(n_bts=8, seed=seed, extra_candidates=2))
        rng = random.Random(seed)
        bts, bsc = list(base.bts), list(base.bsc)
        rng.shuffle(bts)
        rng.shuffle(bsc)
        shuffled = Instance(
            msc=base.msc,
            bts=tuple(bts),
            bsc=tuple(bsc),
            models=tuple(reversed(base.models)),
            capacity_table=base.capacity_table,
            rates=base.rates,
        )
        assignment = {b.id: rng.choice(base.bsc).id for b in base.bts}
        solution = complete_assignment(base, assignment)
        pairs, configs = list(solution.assignment), list(solution.bsc_config)
        rng.shuffle(pairs)
        rng.shuffle(configs)
        reordered = Solution(tuple(pairs), tuple(configs), solution.objective)

        expected = evaluate(base, solution)
        got = evaluate(shuffled, reordered)
        for a, b in (
            (expected.abis_cost, got.abis_cost),
            (expected.trunk_cost, got.trunk_cost),
            (expected.bsc_cost, got.bsc_cost),
            (expected.total, got.total),
        ):
            assert b == pytest.approx(a, rel=1e-9)
        assert check_feasibility(shuffled, reordered) == []


class TestCheckFeasibility:
    """Tests for check_feasibility."""

    def _solution(self, inst, assignment):
        return complete_assignment(inst, assignment)

    def test_missing_bts_reported(self):
        """Test that an unassigned BTS is an assignment violation."""
        inst = make_instance([(1, 0, 0, 10.0), (2, 1, 0, 10.0)])
        good = self._solution(inst, {1: 1, 2: 1})
        broken = Solution(good.assignment[:1], good.bsc_config, good.objective)
        kinds = [v.constraint for v in check_feasibility(inst, broken)]
        assert "assignment" in kinds

    def test_duplicate_assignment_reported(self):
        """Test that a BTS listed twice is an assignment violation."""
        inst = make_instance([(1, 0, 0, 10.0), (2, 1, 0, 10.0)])
        good = self._solution(inst, {1: 1, 2: 1})
        broken = Solution(((1, 1), (1, 2), (2, 1)), good.bsc_config, good.objective)
        violations = check_feasibility(inst, broken)
        assert any(v.constraint == "assignment" and v.subject == "BTS 1" for v in violations)

    def test_over_capacity_reported(self):
        """Test that too few lines and too small a model are both reported."""
        inst = make_instance([(1, 0, 0, 400.0), (2, 1, 0, 300.0)])
        good = self._solution(inst, {1: 1, 2: 1})
        broken = Solution(good.assignment, ((1, BscConfig(1, "small")), (2, BscConfig())), 0.0)
        kinds = {v.constraint for v in check_feasibility(inst, broken)}
        assert {"line-capacity", "model-capacity"} <= kinds

    def test_equipped_unused_bsc_reported(self):
        """Test that lines on a BSC with no BTS are flagged."""
        inst = make_instance([(1, 0, 0, 10.0), (2, 1, 0, 10.0)])
        good = self._solution(inst, {1: 1, 2: 1})
        configs = ((1, good.config_for(1)), (2, BscConfig(1, "small")))
        broken = Solution(good.assignment, configs, 0.0)
        kinds = [v.constraint for v in check_feasibility(inst, broken)]
        assert kinds == ["unused-bsc"]

    def test_unknown_ids_reported(self):
        """Test that unknown BSC ids and models are reported, not raised."""
        inst = make_instance([(1, 0, 0, 10.0)])
        broken = Solution(((1, 99),), ((1, BscConfig(1, "huge")),), 0.0)
        kinds = [v.constraint for v in check_feasibility(inst, broken)]
        assert "unknown-id" in kinds

    def test_solver_output_is_clean(self, generated_instance):
        """Test that a completed assignment has no violations."""
        inst = generated_instance
        tables = CostTables(inst)
        assignment = {}
        for i, b in enumerate(inst.bts):
            nearest = min(range(tables.n_bsc), key=lambda j: tables.link[i][j])
            assignment[b.id] = inst.bsc[nearest].id
        assert check_feasibility(inst, complete_assignment(inst, assignment)) == []
