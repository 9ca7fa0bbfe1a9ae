import numpy as np

from qnet_pumping.exceptions import DomainException


def _scalar_or_array(value):
    return float(value) if np.ndim(value) == 0 else value


def binary_entropy(x):
    """Base-2 binary entropy with h(0) = h(1) = 0.

    Accepts a scalar or an array of probabilities.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0) or np.any(arr > 1):
        raise DomainException(f'Binary entropy is defined on [0, 1], got {x}')
    inner = (arr > 0) & (arr < 1)
    safe = np.where(inner, arr, 0.5)
    h = np.where(inner, -safe * np.log2(safe) - (1 - safe) * np.log2(1 - safe), 0.0)
    return _scalar_or_array(h)


def transmissivity(length, attenuation):
    """Fraction of photons surviving `length` km of fiber at `attenuation` dB/km"""
    length = np.asarray(length, dtype=float)
    if np.any(length < 0):
        raise DomainException(f'Fiber length must be non-negative, got {length}')
    if attenuation <= 0:
        raise DomainException(f'Attenuation must be positive, got {attenuation}')
    return _scalar_or_array(10.0 ** (-attenuation * length / 10.0))


def raw_key_rate(eta, rep_rate):
    eta = np.asarray(eta, dtype=float)
    if np.any(eta <= 0) or np.any(eta > 1):
        raise DomainException(f'Transmissivity must lie in (0, 1], got {eta}')
    if rep_rate <= 0:
        raise DomainException(f'Repetition rate must be positive, got {rep_rate}')
    return _scalar_or_array(eta * rep_rate)


def secret_key_rate(eta, rep_rate, qber):
    """S = eta * r * (1 - h(qber)), elementwise"""
    return _scalar_or_array(np.asarray(raw_key_rate(eta, rep_rate)) * (1.0 - np.asarray(binary_entropy(qber))))


def instantaneous_skr(config, chi, topology):
    """SKR matrix S(G, chi): the per-edge rate on pumped pairs, zero elsewhere"""
    from qnet_pumping.network.matrices import SkrMatrix

    topology.check_feasible(config.n, config.capacity)
    rates = np.where(topology.mask(config.n), config.skr_if_pumped(chi), 0.0)
    return SkrMatrix.from_vector(config.n, rates)
