import hashlib
import math

import numpy as np

from qnet_pumping.exceptions import ConfigException


def indent(level):
    return '  ' * level


def short_hash(values, length=12):
    """Stable hex digest of a float array, used to label unnamed channel states"""
    arr = np.ascontiguousarray(values, dtype=np.float64)
    return hashlib.sha1(arr.tobytes()).hexdigest()[:length]


def is_real(value):
    return isinstance(value, (int, float, np.integer, np.floating)) and not isinstance(value, bool)


def check_positive(value, name):
    """Returns value as a float; a finite real > 0 or ConfigException"""
    if not is_real(value) or not math.isfinite(value) or value <= 0:
        raise ConfigException(f'{name} must be a positive number, got {value!r}')
    return float(value)


class ProcessType:
    FIXED = 'fixed'
    FINITE_IID = 'finite_iid'
    PERTURBATION_WALK = 'perturbation_walk'

    ALIASES = {
        'fixed': FIXED,
        'iid': FINITE_IID,
        'finite_iid': FINITE_IID,
        'walk': PERTURBATION_WALK,
        'perturbation_walk': PERTURBATION_WALK,
    }


class SkrMode:
    PHYSICS = 'physics'
    DIRECT_MATRIX = 'direct_matrix'
