import numpy as np

from qnet_pumping.exceptions import ConfigException, ScheduleException
from qnet_pumping.network.matrices import WeightMatrix, as_pair_vector
from qnet_pumping.network.pairs import node_count_for
from qnet_pumping.scheduler.state import AvgSkrState


def _check_positive(xbar):
    xbar = np.asarray(xbar, dtype=float)
    if np.any(xbar <= 0) or not np.all(np.isfinite(xbar)):
        raise ScheduleException(f'Average SKRs must be positive and finite, got min {xbar.min()}')
    return xbar


class Strategy:
    """Pumping strategy: maps running averages to per-pair gradient weights"""
    name = None
    alpha = None

    def weights(self, xbar, skr_if_pumped):
        raise NotImplementedError()

    @property
    def label(self):
        return self.name

    def __eq__(self, other):
        if type(self) != type(other):
            return False

        for k in vars(self):
            if getattr(self, k) != getattr(other, k):
                return False

        return True

    def __hash__(self):
        return hash((type(self), self.label))

    def __repr__(self):
        attrs_str = ', '.join([f'{k}={v}' for k, v in vars(self).items()])
        return f'{self.__class__.__name__}({attrs_str})'


class ProportionalFair(Strategy):
    """PF-PS: w = 1/xbar"""
    name = 'pf'
    alpha = 1.0

    def weights(self, xbar, skr_if_pumped):
        return 1.0 / _check_positive(xbar)


class Greedy(Strategy):
    """G-PS: w = 1, maximizes the instantaneous SKR sum"""
    name = 'greedy'
    alpha = 0.0

    def weights(self, xbar, skr_if_pumped):
        return np.ones_like(_check_positive(xbar))


class RoundRobin(Strategy):
    """RR-PS: w = 1/(S xbar), so pumped scores reduce to 1/xbar. Pairs with S = 0 get weight 0."""
    name = 'rr'

    def weights(self, xbar, skr_if_pumped):
        xbar = _check_positive(xbar)
        skr = np.asarray(skr_if_pumped, dtype=float)
        eligible = skr > 0
        out = np.zeros_like(xbar)
        out[eligible] = 1.0 / (skr[eligible] * xbar[eligible])
        return out


class AlphaFair(Strategy):
    """w = xbar^(-alpha); alpha=0 is greedy, alpha=1 is proportional fair"""
    name = 'alpha'

    def __init__(self, alpha):
        if not alpha >= 0:
            raise ConfigException(f'alpha must be >= 0, got {alpha!r}')
        self.alpha = float(alpha)

    @property
    def label(self):
        return f'alpha:{self.alpha:g}'

    def weights(self, xbar, skr_if_pumped):
        return _check_positive(xbar) ** (-self.alpha)


def gradient_weights(strategy, xbar, skr_if_pumped):
    """Strategy weights as a WeightMatrix; xbar is an AvgSkrState or a canonical pair vector"""
    if isinstance(xbar, AvgSkrState):
        n, xbar = xbar.n, xbar.xbar
    else:
        xbar = np.asarray(xbar, dtype=float)
        n = node_count_for(len(xbar))
    return WeightMatrix.from_vector(n, strategy.weights(xbar, as_pair_vector(skr_if_pumped)))


def parse_strategy(text):
    """pf | greedy | rr | alpha:<a>"""
    if isinstance(text, Strategy):
        return text
    key = str(text).strip().lower()
    if key in ('pf', 'pf-ps', 'proportional_fair'):
        return ProportionalFair()
    elif key in ('greedy', 'g', 'g-ps'):
        return Greedy()
    elif key in ('rr', 'rr-ps', 'round_robin'):
        return RoundRobin()
    elif key.startswith('alpha:'):
        try:
            alpha = float(key.split(':', 1)[1])
        except ValueError:
            raise ConfigException(f'Invalid alpha in strategy {text!r}')
        return AlphaFair(alpha)
    raise ConfigException(f'Unknown strategy {text!r}. Available options are: pf, greedy, rr, alpha:<a>.')
