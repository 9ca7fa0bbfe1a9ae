import math

import numpy as np
import pytest

from qnet_pumping.exceptions import ConfigException, ScheduleException
from qnet_pumping.network.matrices import WeightMatrix
from qnet_pumping.network.topology import Topology
from qnet_pumping.scheduler import (AlphaFair, FixedStep, Greedy, HarmonicStep, ProportionalFair, RoundRobin,
                                    gradient_weights, metrics, parse_schedule, parse_strategy, select_topology,
                                    update_average)
from qnet_pumping.scheduler.state import AvgSkrState


class TestStrategies:
    def test_proportional_fair(self):
        weights = gradient_weights(ProportionalFair(), np.array([10.0, 4.0, 2.0]), np.ones(3))
        assert isinstance(weights, WeightMatrix)
        assert weights.n == 3
        assert weights.as_vector().tolist() == [0.1, 0.25, 0.5]
        assert weights[2, 1] == 0.5

    def test_weights_from_state(self):
        skr = np.array([100, 200, 300, 400, 500, 600], dtype=float)
        weights = gradient_weights(ProportionalFair(), AvgSkrState.initial(4, 10.0), skr)
        assert weights.as_vector().tolist() == [0.1] * 6
        assert select_topology(weights, skr, 2) == Topology([(1, 3), (2, 3)])

    def test_weights_bad_pair_count(self):
        with pytest.raises(ConfigException, match="not a valid pair count"):
            gradient_weights(ProportionalFair(), np.array([10.0, 4.0]), np.ones(2))

    def test_greedy(self):
        assert Greedy().weights(np.array([10.0, 4.0]), np.array([1.0, 1.0])).tolist() == [1.0, 1.0]

    def test_round_robin(self):
        weights = RoundRobin().weights(np.array([10.0, 4.0, 2.0]), np.array([5.0, 0.0, 1.0]))
        assert weights.tolist() == [pytest.approx(0.02), 0.0, pytest.approx(0.5)]

    def test_alpha_fair_limits(self):
        xbar = np.array([3.0, 7.0, 11.0])
        assert AlphaFair(1).weights(xbar, xbar) == pytest.approx(ProportionalFair().weights(xbar, xbar))
        assert AlphaFair(0).weights(xbar, xbar).tolist() == [1.0, 1.0, 1.0]
        assert AlphaFair(2).weights(xbar, xbar) == pytest.approx(xbar ** -2)

    def test_non_positive_average(self):
        with pytest.raises(ScheduleException):
            ProportionalFair().weights(np.array([1.0, 0.0]), np.ones(2))

    @pytest.mark.parametrize('text, expected', [
        ('pf', ProportionalFair()),
        ('PF-PS', ProportionalFair()),
        ('greedy', Greedy()),
        ('rr', RoundRobin()),
        ('alpha:2', AlphaFair(2)),
    ])
    def test_parse(self, text, expected):
        assert parse_strategy(text) == expected

    @pytest.mark.parametrize('text', ['best', 'alpha:x', 'alpha:-1'])
    def test_parse_invalid(self, text):
        with pytest.raises(ConfigException):
            parse_strategy(text)

    def test_labels(self):
        assert [parse_strategy(s).label for s in ('pf', 'g', 'rr', 'alpha:0.5')] == ['pf', 'greedy', 'rr', 'alpha:0.5']


class TestSchedules:
    def test_fixed(self):
        assert FixedStep(0.5).gamma(7) == 0.5
        assert parse_schedule('fixed:0.25') == FixedStep(0.25)
        assert FixedStep(0.25).label == 'fixed:0.25'

    @pytest.mark.parametrize('gamma', [0, -0.1, 1.5])
    def test_fixed_out_of_range(self, gamma):
        with pytest.raises(ConfigException):
            FixedStep(gamma)

    def test_harmonic(self):
        step = parse_schedule('harmonic')
        assert step == HarmonicStep()
        assert [step.gamma(t) for t in (1, 2, 3)] == [0.5, 1 / 3, 0.25]
        with pytest.raises(ConfigException):
            step.gamma(0)

    def test_parse_invalid(self):
        with pytest.raises(ConfigException):
            parse_schedule('cosine')
        with pytest.raises(ConfigException):
            parse_schedule('fixed:abc')


class TestAverages:
    def test_update(self):
        assert update_average(10.0, 600.0, 0.5) == 305.0
        assert update_average(10.0, 0.0, 0.5) == 5.0
        assert update_average(1.0, 3.0, 1.0) == 3.0

    def test_update_vector(self):
        updated = update_average(np.array([10.0, 10.0]), np.array([0.0, 500.0]), 0.5)
        assert updated.tolist() == [5.0, 255.0]

    def test_floor(self):
        assert update_average(1e-3, 0.0, 0.5, floor=1e-2) == 1e-2

    @pytest.mark.parametrize('gamma', [0.0, 1.2])
    def test_bad_gamma(self, gamma):
        with pytest.raises(ScheduleException):
            update_average(1.0, 2.0, gamma)

    def test_state(self):
        state = AvgSkrState.initial(4, 10.0)
        assert state.xbar.tolist() == [10.0] * 6
        assert state[3, 2] == 10.0
        assert state.matrix[0, 0] == 0.0
        with pytest.raises(ConfigException):
            AvgSkrState.initial(4, 0.0)
        with pytest.raises(ConfigException):
            AvgSkrState.initial(4, "10")
        with pytest.raises(ConfigException):
            AvgSkrState(4, np.ones(5))


class TestMetrics:
    def test_uniform(self):
        result = metrics(np.full(6, 10.0))
        assert result.log_sum == pytest.approx(6 * math.log(10))
        assert result.geo_mean == pytest.approx(10.0)
        assert result.total == 60.0
        assert result.jain == pytest.approx(1.0)

    def test_worked_example_vector(self):
        result = metrics(np.array([10, 10, 10, 305, 10, 255], dtype=float))
        assert result.log_sum == pytest.approx(4 * math.log(10) + math.log(305) + math.log(255))
        assert result.log_sum == pytest.approx(20.4719, abs=1e-4)

    def test_jain_single_winner(self):
        assert metrics(np.array([1e-9, 1e-9, 1.0])).jain == pytest.approx(1 / 3, rel=1e-6)

    def test_non_positive(self):
        with pytest.raises(ScheduleException):
            metrics(np.array([1.0, 0.0]))


class TestMetricExamples:
    def test_geo_mean(self):
        assert metrics(np.array([4.0, 9.0])).geo_mean == pytest.approx(6.0)

    def test_state_input(self):
        assert metrics(AvgSkrState.initial(3, 2.0)).total == 6.0
