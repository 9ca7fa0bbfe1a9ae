from dataclasses import asdict, dataclass

import numpy as np

from qnet_pumping.exceptions import ConfigException, ScheduleException
from qnet_pumping.network.matrices import as_pair_vector
from qnet_pumping.network.pairs import pair_count, pair_index, to_matrix
from qnet_pumping.utils import is_real


class AvgSkrState:
    """Running average SKR per pair, stored as a canonical pair vector"""
    def __init__(self, n, xbar, t=0):
        xbar = np.array(xbar, dtype=float)
        if xbar.shape != (pair_count(n),):
            raise ConfigException(f'Expected {pair_count(n)} average SKRs for {n} nodes, got shape {xbar.shape}')
        if np.any(xbar <= 0) or not np.all(np.isfinite(xbar)):
            raise ScheduleException(f'Average SKRs must be positive and finite, got min {xbar.min()}')
        self.n = n
        self.xbar = xbar
        self.t = t

    @classmethod
    def initial(cls, n, xbar_init):
        """xbar_init is a positive scalar, an n x n matrix or a pair vector"""
        if np.ndim(xbar_init) == 0:
            if not is_real(xbar_init) or not xbar_init > 0:
                raise ConfigException(f'Initial average SKR must be positive, got {xbar_init!r}')
            return cls(n, np.full(pair_count(n), float(xbar_init)))
        return cls(n, as_pair_vector(xbar_init))

    @property
    def matrix(self):
        return to_matrix(self.n, self.xbar)

    def __getitem__(self, key):
        i, j = key
        return float(self.xbar[pair_index(self.n, i, j)])

    def __repr__(self):
        return f'AvgSkrState(t={self.t}, xbar={self.xbar.tolist()})'


def update_average(xbar_entry, served, gamma, floor=0.0):
    """x + gamma (served - x), floored. Works elementwise on arrays."""
    if not 0 < gamma <= 1:
        raise ScheduleException(f'Step size must lie in (0, 1], got {gamma!r}')
    updated = np.maximum(np.asarray(xbar_entry, dtype=float) + gamma * (np.asarray(served, dtype=float) - xbar_entry),
                         floor)
    return float(updated) if np.ndim(updated) == 0 else updated


@dataclass(frozen=True)
class Metrics:
    log_sum: float
    geo_mean: float
    total: float
    jain: float

    def as_dict(self):
        return asdict(self)


def metrics(xbar):
    """Log-sum utility, geometric mean over pairs, total throughput and Jain index"""
    if isinstance(xbar, AvgSkrState):
        x = xbar.xbar
    else:
        x = as_pair_vector(xbar)
    if np.any(x <= 0):
        raise ScheduleException(f'Metrics need positive averages, got min {x.min()}')
    m = len(x)
    log_sum = float(np.sum(np.log(x)))
    total = float(np.sum(x))
    return Metrics(log_sum=log_sum,
                   geo_mean=float(np.exp(log_sum / m)),
                   total=total,
                   jain=float(total ** 2 / (m * np.sum(x ** 2))))
