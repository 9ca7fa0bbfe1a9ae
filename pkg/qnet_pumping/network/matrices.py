import numpy as np

from qnet_pumping.exceptions import ConfigException
from qnet_pumping.network.pairs import to_matrix, to_vector


def validate_pair_matrix(values, name='matrix', n=None, lower=None, upper=None):
    """Returns values as a float array after checking shape, symmetry, diagonal and bounds"""
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError):
        raise ConfigException(f'{name} must be a numeric n x n matrix')

    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ConfigException(f'{name} must be a square matrix, got shape {arr.shape}')
    if n is not None and arr.shape[0] != n:
        raise ConfigException(f'{name} must be {n} x {n}, got {arr.shape[0]} x {arr.shape[1]}')
    if not np.all(np.isfinite(arr)):
        raise ConfigException(f'{name} contains non-finite entries')
    if not np.array_equal(arr, arr.T):
        bad = np.argwhere(arr != arr.T)[0]
        raise ConfigException(f'{name} is not symmetric at ({bad[0]}, {bad[1]})')
    if np.any(np.diag(arr) != 0):
        raise ConfigException(f'{name} must have a zero diagonal')

    off = arr[~np.eye(arr.shape[0], dtype=bool)]
    if lower is not None and np.any(off < lower):
        raise ConfigException(f'{name} out of range [{lower}, {upper}]: found {off.min()}')
    if upper is not None and np.any(off > upper):
        raise ConfigException(f'{name} out of range [{lower}, {upper}]: found {off.max()}')
    return arr


def as_pair_vector(values):
    """Accepts a PairMatrix, an n x n array or a canonical pair vector"""
    if isinstance(values, PairMatrix):
        return values.as_vector()
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 2:
        return to_vector(arr)
    return arr


class PairMatrix:
    name = 'matrix'
    lower = None
    upper = None

    def __init__(self, values, n=None):
        arr = validate_pair_matrix(values, name=self.name, n=n, lower=self.lower, upper=self.upper)
        arr.setflags(write=False)
        self.values = arr

    @classmethod
    def from_vector(cls, n, vector):
        return cls(to_matrix(n, vector))

    @property
    def n(self):
        return self.values.shape[0]

    def as_vector(self):
        return to_vector(self.values)

    def __getitem__(self, key):
        i, j = key
        return float(self.values[i, j])

    def __eq__(self, other):
        if type(self) != type(other):
            return False
        return np.array_equal(self.values, other.values)

    def __repr__(self):
        return f'{self.__class__.__name__}(n={self.n}, values={self.values.tolist()})'


class SkrMatrix(PairMatrix):
    """Instantaneous secret key rates, bits/s"""
    name = 'SKR matrix'
    lower = 0.0

    def support(self):
        rows, cols = np.nonzero(np.triu(self.values, 1))
        return list(zip(rows.tolist(), cols.tolist()))


class WeightMatrix(PairMatrix):
    name = 'weight matrix'
    lower = 0.0
