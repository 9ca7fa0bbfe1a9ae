import json
import math

import numpy as np
import pytest

from qnet_pumping.exceptions import ConfigException, DomainException
from qnet_pumping.network import ChannelState, NetworkConfig
from qnet_pumping.oracle import evaluate_objective, region_vertices, solve_utility_optimum, write_solution
from qnet_pumping.oracle.rate_region import StepRule
from qnet_pumping.scheduler import AlphaFair, Greedy, ProportionalFair, RoundRobin

SKR_N4 = np.array([100, 200, 300, 400, 500, 600], dtype=float)


def direct_config(skr, capacity):
    skr = np.asarray(skr, dtype=float)
    return NetworkConfig(n=skr.shape[0], capacity=capacity, direct_skr=skr)


def solve(config, **kwargs):
    return solve_utility_optimum(config, [config.base_state()], **kwargs)


class TestEvaluateObjective:
    def test_log(self):
        x = np.array([10, 10, 10, 305, 10, 255], dtype=float)
        expected = 4 * math.log(10) + math.log(305) + math.log(255)
        assert evaluate_objective(x, ProportionalFair()) == pytest.approx(expected)
        assert evaluate_objective(x, 1) == pytest.approx(expected)

    def test_alpha_values(self):
        x = np.array([1.0, 4.0])
        assert evaluate_objective(x, Greedy()) == 5.0
        assert evaluate_objective(x, AlphaFair(2)) == pytest.approx(-1.25)
        assert evaluate_objective(x, 0.5) == pytest.approx(6.0)

    def test_domain(self):
        with pytest.raises(DomainException):
            evaluate_objective(np.array([1.0, 0.0]), ProportionalFair())
        with pytest.raises(DomainException):
            evaluate_objective(np.array([1.0, -1.0]), Greedy())

    def test_round_robin_has_no_utility(self):
        with pytest.raises(ConfigException):
            evaluate_objective(np.ones(2), RoundRobin())


class TestSolveUtilityOptimum:
    def test_two_nodes(self):
        solution = solve(direct_config([[0, 5], [5, 0]], 1))
        assert solution.converged
        assert solution.x_star.tolist() == [5.0]

    def test_symmetric_triangle(self):
        solution = solve(direct_config([[0, 6, 6], [6, 0, 6], [6, 6, 0]], 1))
        assert solution.converged
        assert solution.x_star == pytest.approx([2.0, 2.0, 2.0])

    def test_worked_example_network(self, worked_n4_config):
        solution = solve(worked_n4_config, tol=1e-10)
        assert solution.converged
        assert solution.x_star == pytest.approx(SKR_N4 / 3, rel=1e-3)
        assert solution.log_sum == pytest.approx(np.sum(np.log(SKR_N4 / 3)), abs=1e-6)

    def test_matches_grid_search(self, worked_n4_config):
        steps = np.arange(13) / 12
        grid = np.array(np.meshgrid(*[steps] * 5, indexing='ij')).reshape(5, -1).T
        last = 2 - grid.sum(axis=1)
        keep = (last >= -1e-12) & (last <= 1 + 1e-12)
        shares = np.column_stack([grid[keep], np.clip(last[keep], 0, 1)])
        with np.errstate(divide='ignore'):
            values = np.log(shares * SKR_N4).sum(axis=1)
        best = values.max()

        solution = solve(worked_n4_config, tol=1e-10)
        assert solution.objective >= best - 1e-6
        assert solution.objective == pytest.approx(best, abs=1e-3)

    def test_gap_bounds_suboptimality(self, fiber_n5_config):
        solution = solve(fiber_n5_config)
        vertices = region_vertices(fiber_n5_config, [fiber_n5_config.base_state()])[0]
        rng = np.random.default_rng(0)
        for weights in rng.dirichlet(np.ones(len(vertices)), size=200):
            value = evaluate_objective(weights @ vertices, ProportionalFair())
            assert value <= solution.objective + solution.duality_gap + 1e-9

    def test_history_is_monotone(self, fiber_n5_config):
        solution = solve(fiber_n5_config, record_history=True)
        history = np.array(solution.history)
        assert np.all(np.diff(history) >= -1e-9)
        assert len(history) == solution.iterations + 1

    def test_scale_invariant(self, worked_n4_config):
        scaled = direct_config(4 * worked_n4_config.direct_skr, 2)
        base_solution = solve(worked_n4_config, tol=1e-9)
        scaled_solution = solve(scaled, tol=1e-9)
        assert scaled_solution.x_star == pytest.approx(4 * base_solution.x_star, rel=1e-9)

    def test_distributions(self, fiber_n5_config):
        solution = solve(fiber_n5_config)
        skr = fiber_n5_config.skr_if_pumped(fiber_n5_config.base_state())
        for distribution in solution.distributions:
            assert sum(weight for _, weight in distribution) == pytest.approx(1.0)
            assert all(len(topology) <= fiber_n5_config.capacity for topology, _ in distribution)
        rebuilt = sum(weight * np.where(topology.mask(5), skr, 0.0) for topology, weight in solution.distributions[0])
        assert rebuilt == pytest.approx(solution.x_star)

    def test_decomposable_five_nodes(self, fiber_n5_config):
        solution = solve(fiber_n5_config, tol=1e-10)
        skr = fiber_n5_config.skr_if_pumped(fiber_n5_config.base_state())
        assert solution.x_star == pytest.approx(0.2 * skr, rel=1e-3)

    def test_open_loop(self, worked_n4_config):
        reference = solve(worked_n4_config, tol=1e-10)
        solution = solve(worked_n4_config, step_rule=StepRule.OPEN_LOOP, max_iter=5000)
        assert solution.objective == pytest.approx(reference.objective, abs=1e-2)

    def test_two_states(self, fiber_n5_config):
        base = fiber_n5_config.base_qber
        noisy = np.clip(base * 4, 0, 0.5)
        states = [ChannelState(base, state_id='clear'), ChannelState(noisy, state_id='noisy')]
        solution = solve_utility_optimum(fiber_n5_config, states, [0.25, 0.75])
        assert solution.converged
        rebuilt = np.zeros(fiber_n5_config.m)
        for p, state, distribution in zip([0.25, 0.75], states, solution.distributions):
            skr = fiber_n5_config.skr_if_pumped(state)
            for topology, weight in distribution:
                rebuilt += p * weight * np.where(topology.mask(5), skr, 0.0)
        assert rebuilt == pytest.approx(solution.x_star)

    def test_unservable_pair_excluded(self):
        config = direct_config([[0, 5, 0], [5, 0, 3], [0, 3, 0]], 1)
        solution = solve(config)
        assert [pair.label() for pair in solution.excluded] == ['0-2']
        assert solution.included.tolist() == [True, False, True]
        assert solution.x_star[1] == 0.0

    def test_greedy_utility(self, worked_n4_config):
        solution = solve(worked_n4_config, utility=Greedy())
        assert solution.objective == pytest.approx(1100.0)

    def test_round_robin_rejected(self, worked_n4_config):
        with pytest.raises(ConfigException):
            solve(worked_n4_config, utility=RoundRobin())

    def test_bad_pi(self, fiber_n5_config):
        with pytest.raises(ConfigException):
            solve_utility_optimum(fiber_n5_config, [fiber_n5_config.base_state()], [0.5])

    def test_region_vertices(self, worked_n4_config):
        vertices = region_vertices(worked_n4_config, [worked_n4_config.base_state()])
        assert len(vertices) == 1
        assert vertices[0].shape == (22, 6)
        assert vertices[0][0].tolist() == [0.0] * 6
        assert vertices[0][-1].tolist() == [0, 0, 0, 0, 500, 600]

    def test_write_solution(self, worked_n4_config, tmp_path):
        solution = solve(worked_n4_config)
        path = write_solution(solution, str(tmp_path / 'solution.json'))
        with open(path) as fp:
            doc = json.load(fp)
        assert set(doc['x_star']) == {'0-1', '0-2', '0-3', '1-2', '1-3', '2-3'}
        assert doc['converged'] is True
        assert doc['distributions'][0]['state_id'] == 'base'


class TestObjectiveExamples:
    @pytest.mark.parametrize('x, alpha, expected', [
        ([math.e, math.e], 1, 2.0),
        ([3.0, 4.0], 0, 7.0),
        ([1.0, 2.0], 2, -1.5),
    ])
    def test_values(self, x, alpha, expected):
        assert evaluate_objective(np.array(x), alpha) == pytest.approx(expected)

    def test_two_node_vertices(self):
        vertices = region_vertices(direct_config([[0, 7], [7, 0]], 1), [ChannelState(np.zeros((2, 2)))])
        assert vertices[0].tolist() == [[0.0], [7.0]]
