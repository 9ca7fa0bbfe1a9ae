import json
import logging

import numpy as np

from qnet_pumping.exceptions import ConfigException
from qnet_pumping.network.matrices import validate_pair_matrix
from qnet_pumping.network.pairs import check_node_count, enumerate_pairs, pair_count, to_vector
from qnet_pumping.physics.skr import secret_key_rate, transmissivity
from qnet_pumping.utils import SkrMode, check_positive, short_hash

logger = logging.getLogger(__name__)

DEFAULT_REPETITION_RATE = 1e6
DEFAULT_ATTENUATION = 0.2
QBER_BOUNDS = (0.0, 0.5)


class ChannelState:
    """One realization of per-pair channel conditions"""
    def __init__(self, qber, state_id=None):
        self.qber = validate_pair_matrix(qber, name='QBER', lower=QBER_BOUNDS[0], upper=QBER_BOUNDS[1])
        self.qber.setflags(write=False)
        self.qber_vector = to_vector(self.qber)
        self.state_id = state_id

    @property
    def n(self):
        return self.qber.shape[0]

    @property
    def key(self):
        return self.state_id if self.state_id is not None else short_hash(self.qber_vector)

    def __eq__(self, other):
        if not isinstance(other, ChannelState):
            return False
        return self.state_id == other.state_id and np.array_equal(self.qber, other.qber)

    def __repr__(self):
        return f'ChannelState(state_id={self.state_id!r}, qber={self.qber.tolist()})'


class NetworkConfig:
    """Static network description; immutable after construction"""
    def __init__(self,
                 n,
                 capacity,
                 attenuation=DEFAULT_ATTENUATION,
                 repetition_rate=DEFAULT_REPETITION_RATE,
                 distances=None,
                 base_qber=None,
                 direct_skr=None):
        self.n = check_node_count(n)
        if not isinstance(capacity, (int, np.integer)) or isinstance(capacity, bool) or capacity < 1:
            raise ConfigException(f'Source capacity must be an integer >= 1, got {capacity!r}')
        self.capacity = int(capacity)
        self.attenuation = check_positive(attenuation, 'Attenuation')
        self.repetition_rate = check_positive(repetition_rate, 'Repetition rate')

        if direct_skr is None:
            if distances is None or base_qber is None:
                missing = 'distances_km' if distances is None else 'qber'
                raise ConfigException(f'Physics mode requires {missing}: missing from config')
            self.skr_mode = SkrMode.PHYSICS
        else:
            self.skr_mode = SkrMode.DIRECT_MATRIX

        self.distances = None
        self.base_qber = None
        self.direct_skr = None
        if distances is not None:
            self.distances = validate_pair_matrix(distances, name='distance matrix', n=self.n, lower=0.0)
        if base_qber is not None:
            self.base_qber = validate_pair_matrix(base_qber, name='QBER', n=self.n,
                                                  lower=QBER_BOUNDS[0], upper=QBER_BOUNDS[1])
        if direct_skr is not None:
            self.direct_skr = validate_pair_matrix(direct_skr, name='direct SKR matrix', n=self.n, lower=0.0)

        for matrix in (self.distances, self.base_qber, self.direct_skr):
            if matrix is not None:
                matrix.setflags(write=False)

        self._eta = None
        if self.skr_mode == SkrMode.PHYSICS:
            self._eta = transmissivity(to_vector(self.distances), self.attenuation)
        self._direct_vector = to_vector(self.direct_skr) if self.direct_skr is not None else None

    @property
    def m(self):
        return pair_count(self.n)

    @property
    def pairs(self):
        return enumerate_pairs(self.n)

    def base_state(self):
        if self.base_qber is None:
            return ChannelState(np.zeros((self.n, self.n)), state_id='base')
        return ChannelState(self.base_qber, state_id='base')

    def skr_if_pumped(self, chi):
        """Per-pair SKR each pair would get if pumped under channel state chi, canonical order"""
        if chi.n != self.n:
            raise ConfigException(f'Channel state has {chi.n} nodes, network has {self.n}')
        if self.skr_mode == SkrMode.DIRECT_MATRIX:
            return self._direct_vector.copy()
        return np.asarray(secret_key_rate(self._eta, self.repetition_rate, chi.qber_vector), dtype=float)

    def max_skr(self):
        top = float(np.max(self.skr_if_pumped(self.base_state())))
        return top if top > 0 else 1.0

    def __repr__(self):
        return (f'NetworkConfig(n={self.n}, capacity={self.capacity}, skr_mode={self.skr_mode!r}, '
                f'attenuation={self.attenuation}, repetition_rate={self.repetition_rate})')


def _require(raw, key):
    if key not in raw:
        raise ConfigException(f'Config is missing required key "{key}"')
    return raw[key]


def validate_config(raw):
    """Builds a NetworkConfig from a parsed config document"""
    if not isinstance(raw, dict):
        raise ConfigException(f'Config document must be an object, got {type(raw).__name__}')

    n = _require(raw, 'n')
    capacity = _require(raw, 'capacity')
    direct_skr = raw.get('direct_skr')
    distances = raw.get('distances_km')
    qber = raw.get('qber')

    if direct_skr is None:
        for key in ('distances_km', 'qber'):
            if raw.get(key) is None:
                raise ConfigException(f'Physics mode requires "{key}": missing from config')

    config = NetworkConfig(n=n,
                           capacity=capacity,
                           attenuation=raw.get('attenuation_db_per_km', DEFAULT_ATTENUATION),
                           repetition_rate=raw.get('repetition_rate_hz', DEFAULT_REPETITION_RATE),
                           distances=distances,
                           base_qber=qber,
                           direct_skr=direct_skr)
    logger.debug('Validated %r', config)
    return config


def load_config(path):
    return validate_config(load_document(path))


def load_document(path):
    try:
        with open(path) as fp:
            return json.load(fp)
    except json.JSONDecodeError as e:
        raise ConfigException(f'Config file {path} is not valid JSON: {e}')
