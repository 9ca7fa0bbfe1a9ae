from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from qnet_pumping.exceptions import ConfigException


@dataclass(frozen=True, order=True)
class Pair:
    """Unordered node pair stored with a < b"""
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ConfigException(f'Node ids must be non-negative, got ({self.a}, {self.b})')
        if self.a >= self.b:
            raise ConfigException(f'Pair must satisfy a < b, got ({self.a}, {self.b})')

    @classmethod
    def of(cls, i, j):
        i, j = int(i), int(j)
        if i == j:
            raise ConfigException(f'A pair needs two distinct nodes, got ({i}, {j})')
        return cls(min(i, j), max(i, j))

    def __iter__(self):
        return iter((self.a, self.b))

    def label(self):
        return f'{self.a}-{self.b}'

    def __repr__(self):
        return f'Pair({self.a}, {self.b})'


def check_node_count(n):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 2:
        raise ConfigException(f'Node count must be an integer >= 2, got {n!r}')
    return int(n)


@lru_cache(maxsize=None)
def _pairs(n):
    return tuple(Pair(a, b) for a in range(n) for b in range(a + 1, n))


def enumerate_pairs(n):
    """All n(n-1)/2 pairs in row-major upper-triangle order.

    This order is the canonical tie-break and random draw order everywhere.
    """
    return list(_pairs(check_node_count(n)))


def pair_count(n):
    return n * (n - 1) // 2


def pair_index(n, i, j):
    a, b = (i, j) if i < j else (j, i)
    if a == b or a < 0 or b >= n:
        raise ConfigException(f'Invalid pair ({i}, {j}) for {n} nodes')
    return a * (2 * n - a - 1) // 2 + (b - a - 1)


def upper_indices(n):
    return np.triu_indices(n, 1)


def to_vector(matrix):
    matrix = np.asarray(matrix, dtype=float)
    return matrix[upper_indices(matrix.shape[0])].copy()


def to_matrix(n, vector):
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (pair_count(n),):
        raise ConfigException(f'Expected a vector of {pair_count(n)} pair values, got shape {vector.shape}')
    out = np.zeros((n, n))
    rows, cols = upper_indices(n)
    out[rows, cols] = vector
    out[cols, rows] = vector
    return out


def node_count_for(m):
    """Inverse of pair_count"""
    n = int(round((1 + np.sqrt(1 + 8 * m)) / 2))
    if pair_count(n) != m or n < 2:
        raise ConfigException(f'{m} is not a valid pair count')
    return n
