import logging

import numpy as np

from qnet_pumping.exceptions import ConfigException
from qnet_pumping.network.channel import FixedChannel, RngState, fresh_copy
from qnet_pumping.network.topology import Topology
from qnet_pumping.scheduler.schedules import parse_schedule
from qnet_pumping.scheduler.selection import select_top_indices
from qnet_pumping.scheduler.state import AvgSkrState, metrics, update_average
from qnet_pumping.scheduler.strategies import parse_strategy
from qnet_pumping.scheduler.trace import Trace, TraceRecord

logger = logging.getLogger(__name__)

# Relative to the largest achievable per-edge SKR
INIT_FACTOR = 1e-6
FLOOR_FACTOR = 1e-12


class PumpingScheduler:
    """Gradient-based pumping loop: observe channel, weight pairs, select topology, update averages"""
    def __init__(self,
                 config,
                 strategy,
                 schedule,
                 process=None,
                 xbar_init=None,
                 decay_unserved=True,
                 keep_trace=True):
        self.config = config
        self.strategy = parse_strategy(strategy)
        self.schedule = parse_schedule(schedule)
        self.process = fresh_copy(process if process is not None else FixedChannel(config.base_state()))
        self.decay_unserved = decay_unserved
        self.keep_trace = keep_trace
        self._chi = None
        self._skr = None

        max_skr = config.max_skr()
        self.floor = FLOOR_FACTOR * max_skr
        if xbar_init is None:
            xbar_init = INIT_FACTOR * max_skr
        self.state = AvgSkrState.initial(config.n, xbar_init)

        self.records = []
        self.add_record(TraceRecord(t=0,
                                    state_key=None,
                                    topology=Topology(),
                                    served=(),
                                    xbar=self.state.xbar.copy(),
                                    metrics=metrics(self.state.xbar)))

    @property
    def last_record(self):
        return self.records[-1]

    def add_record(self, record):
        if not self.keep_trace and self.records:
            self.records[-1] = record
            return record
        self.records.append(record)
        return self.records[-1]

    def select(self, skr_if_pumped):
        weights = self.strategy.weights(self.state.xbar, skr_if_pumped)
        return select_top_indices(weights * skr_if_pumped, self.config.capacity)

    def step(self, t, rng, topology=None):
        """Runs step t. A given topology replaces the strategy's own selection."""
        n = self.config.n
        chi = self.process.sample(t, rng)
        if chi is not self._chi:
            self._chi, self._skr = chi, self.config.skr_if_pumped(chi)
        skr = self._skr

        if topology is None:
            indices = self.select(skr)
            topology = Topology.from_indices(n, indices)
        else:
            topology.check_feasible(n, self.config.capacity)
            indices = np.array(topology.indices(n), dtype=int)

        served = np.zeros_like(skr)
        served[indices] = skr[indices]
        gamma = self.schedule.gamma(t)

        xbar = self.state.xbar
        if self.decay_unserved:
            new_xbar = update_average(xbar, served, gamma, floor=self.floor)
        else:
            new_xbar = xbar.copy()
            new_xbar[indices] = update_average(xbar[indices], served[indices], gamma, floor=self.floor)

        self.state.xbar = new_xbar
        self.state.t = t
        return self.add_record(TraceRecord(t=t,
                                           state_key=chi.key,
                                           topology=topology,
                                           served=tuple(served[indices].tolist()),
                                           xbar=new_xbar.copy(),
                                           metrics=metrics(new_xbar)))

    def run(self, horizon, seed=0):
        if not isinstance(horizon, (int, np.integer)) or horizon < 1:
            raise ConfigException(f'Horizon must be an integer >= 1, got {horizon!r}')
        rng = RngState(seed)
        start = self.last_record.t + 1
        logger.debug('Running %s with %s for %d steps, seed %d', self.strategy.label, self.schedule.label,
                     horizon, seed)
        for t in range(start, start + horizon):
            self.step(t, rng)
        return self.trace(seed, rng.ALGORITHM)

    def trace(self, seed, rng_algorithm=RngState.ALGORITHM):
        return Trace(n=self.config.n,
                     strategy=self.strategy.label,
                     schedule=self.schedule.label,
                     seed=seed,
                     process_type=self.process.process_type,
                     rng_algorithm=rng_algorithm,
                     records=list(self.records))


def run(config, strategy, schedule, process=None, horizon=1, seed=0, xbar_init=None, **kwargs):
    scheduler = PumpingScheduler(config, strategy, schedule, process=process, xbar_init=xbar_init, **kwargs)
    return scheduler.run(horizon, seed=seed)
