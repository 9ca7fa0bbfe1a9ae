import numpy as np

from qnet_pumping.exceptions import ConfigException, DomainException
from qnet_pumping.scheduler.strategies import Strategy


def resolve_alpha(utility):
    """Accepts a Strategy with an alpha-fair utility or a bare alpha >= 0"""
    if isinstance(utility, Strategy):
        if utility.alpha is None:
            raise ConfigException(f'Strategy {utility.label} has no utility function to optimize')
        return float(utility.alpha)
    try:
        alpha = float(utility)
    except (TypeError, ValueError):
        raise ConfigException(f'Expected a strategy or an alpha value, got {utility!r}')
    if not alpha >= 0:
        raise ConfigException(f'alpha must be >= 0, got {alpha}')
    return alpha


def utility_values(x, alpha):
    """U(x) = x^(1-alpha)/(1-alpha), or log(x) for alpha = 1"""
    x = np.asarray(x, dtype=float)
    if alpha >= 1 and np.any(x <= 0):
        raise DomainException(f'alpha={alpha} utility needs positive rates, got min {x.min()}')
    if np.any(x < 0):
        raise DomainException(f'Utility needs non-negative rates, got min {x.min()}')
    if alpha == 1:
        return np.log(x)
    return x ** (1 - alpha) / (1 - alpha)


def utility_gradient(x, alpha):
    return np.asarray(x, dtype=float) ** (-alpha)


def evaluate_objective(x, utility):
    return float(np.sum(utility_values(x, resolve_alpha(utility))))
