from .pumping import PumpingScheduler, run
from .selection import enumerate_feasible, select_topology, select_topology_exhaustive
from .strategies import ProportionalFair, Greedy, RoundRobin, AlphaFair, gradient_weights, parse_strategy
from .schedules import FixedStep, HarmonicStep, parse_schedule
from .state import AvgSkrState, update_average, metrics


def run_schedule(config, strategy, schedule='harmonic', horizon=1, seed=0, **kwargs):
    return PumpingScheduler(config, strategy, schedule, **kwargs).run(horizon, seed=seed)
