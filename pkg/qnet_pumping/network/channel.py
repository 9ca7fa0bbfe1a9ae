import copy

import numpy as np

from qnet_pumping.exceptions import ConfigException
from qnet_pumping.network.config import QBER_BOUNDS, ChannelState
from qnet_pumping.network.pairs import upper_indices
from qnet_pumping.utils import ProcessType, SkrMode, check_positive

DEFAULT_DELTA_MAX = 0.005
DEFAULT_PERIOD = 100


class RngState:
    """Seeded PCG64 generator; equal seeds and draw order give equal sequences"""
    ALGORITHM = 'PCG64'

    def __init__(self, seed):
        if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool) or not 0 <= seed < 2 ** 64:
            raise ConfigException(f'Seed must be an integer in [0, 2^64), got {seed!r}')
        self.seed = int(seed)
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def random(self):
        return self.generator.random()

    def uniform(self, low, high, size=None):
        return self.generator.uniform(low, high, size=size)

    def spawn(self, count):
        children = np.random.SeedSequence(self.seed).spawn(count)
        return [RngState(int(child.generate_state(1, dtype=np.uint64)[0])) for child in children]

    def __repr__(self):
        return f'RngState(seed={self.seed}, algorithm={self.ALGORITHM})'


def perturb_qber(qber, delta_max, rng, clip_lo=QBER_BOUNDS[0], clip_hi=QBER_BOUNDS[1]):
    """Adds one uniform draw in [-delta_max, delta_max] per pair (canonical order), mirrored and clipped"""
    qber = np.asarray(qber, dtype=float)
    n = qber.shape[0]
    rows, cols = upper_indices(n)
    deltas = np.asarray(rng.uniform(-delta_max, delta_max, size=len(rows)), dtype=float)
    upper = np.clip(qber[rows, cols] + deltas, clip_lo, clip_hi)
    out = np.zeros((n, n))
    out[rows, cols] = upper
    out[cols, rows] = upper
    return out


class ChannelProcess:
    process_type = None

    def sample(self, t, rng):
        raise NotImplementedError()

    def support(self):
        """(states, pi) of the stationary distribution, for processes that have one"""
        raise ConfigException(f'{self.__class__.__name__} has no finite stationary distribution')

    def reset(self):
        pass

    def __repr__(self):
        attrs_str = ', '.join([f'{k}={v!r}' for k, v in vars(self).items() if not k.startswith('_')])
        return f'{self.__class__.__name__}({attrs_str})'


class FixedChannel(ChannelProcess):
    process_type = ProcessType.FIXED

    def __init__(self, state):
        self.state = state

    def sample(self, t, rng):
        return self.state

    def support(self):
        return [self.state], np.array([1.0])


class FiniteIIDChannel(ChannelProcess):
    """Draws an independent state from pi at every step"""
    process_type = ProcessType.FINITE_IID

    def __init__(self, states, pi):
        if not states:
            raise ConfigException('Finite i.i.d. channel needs at least one state')
        try:
            pi = np.asarray(pi, dtype=float)
        except (TypeError, ValueError):
            raise ConfigException(f'State probabilities must be numbers, got {pi!r}')
        if pi.shape != (len(states),):
            raise ConfigException(f'Expected {len(states)} probabilities, got {pi.shape}')
        if np.any(pi < 0) or abs(pi.sum() - 1.0) > 1e-12:
            raise ConfigException(f'State probabilities must be non-negative and sum to 1, got {pi.tolist()}')
        if len({state.n for state in states}) != 1:
            raise ConfigException('All channel states must have the same node count')
        self.states = list(states)
        self.pi = pi
        self._cumulative = np.cumsum(pi)

    def sample(self, t, rng):
        index = int(np.searchsorted(self._cumulative, rng.random(), side='right'))
        return self.states[min(index, len(self.states) - 1)]

    def support(self):
        return list(self.states), self.pi.copy()


class PerturbationWalk(ChannelProcess):
    """QBER random walk: every `period` steps each pair's QBER moves by a clipped uniform step"""
    process_type = ProcessType.PERTURBATION_WALK

    def __init__(self, initial, delta_max=DEFAULT_DELTA_MAX, period=DEFAULT_PERIOD,
                 clip_lo=QBER_BOUNDS[0], clip_hi=QBER_BOUNDS[1]):
        delta_max = check_positive(delta_max, 'delta_max')
        if not isinstance(period, (int, np.integer)) or period < 1:
            raise ConfigException(f'Perturbation period must be an integer >= 1, got {period!r}')
        self.initial = initial
        self.delta_max = float(delta_max)
        self.period = int(period)
        self.clip_lo = clip_lo
        self.clip_hi = clip_hi
        self.reset()

    def reset(self):
        self._current = self.initial
        self._last_perturbed = 0

    @property
    def current(self):
        return self._current

    def sample(self, t, rng):
        if t < 0:
            raise ConfigException(f'Time step must be non-negative, got {t}')
        if t > 0 and t % self.period == 0 and t != self._last_perturbed:
            qber = perturb_qber(self._current.qber, self.delta_max, rng, self.clip_lo, self.clip_hi)
            self._current = ChannelState(qber, state_id=f'walk@{t}')
            self._last_perturbed = t
        return self._current


def sample(process, t, rng):
    return process.sample(t, rng)


def fresh_copy(process):
    """Independent copy with its walk state rewound, so one description serves many runs"""
    process = copy.deepcopy(process)
    process.reset()
    return process


def build_process(doc, config):
    """Builds a channel process from a `channel_process` document"""
    doc = doc or {'type': ProcessType.FIXED}
    if isinstance(doc, str):
        doc = {'type': doc}
    process_type = ProcessType.ALIASES.get(doc.get('type'))
    if process_type is None:
        raise ConfigException(f'Unknown channel process type {doc.get("type")!r}. '
                              f'Available options are: fixed, finite_iid, perturbation_walk.')

    if process_type != ProcessType.FIXED and config.skr_mode == SkrMode.DIRECT_MATRIX:
        raise ConfigException(f'Channel process "{process_type}" needs physics mode; '
                              f'a direct SKR matrix ignores channel states')

    if process_type == ProcessType.FIXED:
        return FixedChannel(config.base_state())
    elif process_type == ProcessType.FINITE_IID:
        if 'states' not in doc or 'pi' not in doc:
            raise ConfigException('finite_iid channel process requires "states" and "pi"')
        state_ids = doc.get('state_ids') or [f'state{i}' for i in range(len(doc['states']))]
        if len(state_ids) != len(doc['states']):
            raise ConfigException(f'"state_ids" has {len(state_ids)} entries but there are {len(doc["states"])} states')
        states = [ChannelState(qber, state_id=state_id) for qber, state_id in zip(doc['states'], state_ids)]
        for state in states:
            if state.n != config.n:
                raise ConfigException(f'Channel state {state.state_id} has {state.n} nodes, network has {config.n}')
        return FiniteIIDChannel(states, doc['pi'])
    return PerturbationWalk(config.base_state(),
                            delta_max=doc.get('delta_max', DEFAULT_DELTA_MAX),
                            period=doc.get('period', DEFAULT_PERIOD))
