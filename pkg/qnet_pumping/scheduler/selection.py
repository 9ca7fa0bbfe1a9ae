import itertools
import math

import numpy as np

from qnet_pumping.exceptions import TopologyException
from qnet_pumping.network.matrices import PairMatrix, as_pair_vector
from qnet_pumping.network.pairs import node_count_for, pair_count
from qnet_pumping.network.topology import Topology

MAX_FEASIBLE_TOPOLOGIES = 10 ** 6


def feasible_count(n, capacity):
    m = pair_count(n)
    return sum(math.comb(m, k) for k in range(min(capacity, m) + 1))


def feasible_index_sets(n, capacity):
    """Index tuples of every edge set with at most `capacity` edges: by size, then lexicographic"""
    count = feasible_count(n, capacity)
    if count > MAX_FEASIBLE_TOPOLOGIES:
        raise TopologyException(f'{count} feasible topologies for n={n}, C={capacity} '
                                f'exceeds the enumeration limit of {MAX_FEASIBLE_TOPOLOGIES}')
    m = pair_count(n)
    return itertools.chain.from_iterable(
        itertools.combinations(range(m), k) for k in range(min(capacity, m) + 1)
    )


def enumerate_feasible(n, capacity):
    index_sets = feasible_index_sets(n, capacity)
    return (Topology.from_indices(n, indices) for indices in index_sets)


def select_top_indices(scores, capacity):
    """Indices of the top-`capacity` strictly positive scores, ties to the lower index, sorted"""
    order = np.argsort(-scores, kind='stable')[:capacity]
    return np.sort(order[scores[order] > 0])


def _score_vectors(weights, skr_per_edge):
    w = as_pair_vector(weights)
    s = as_pair_vector(skr_per_edge)
    if w.shape != s.shape:
        raise TopologyException(f'Weights and SKR cover different pair sets: {w.shape} vs {s.shape}')
    if isinstance(weights, PairMatrix):
        n = weights.n
    elif np.ndim(weights) == 2:
        n = np.shape(weights)[0]
    else:
        n = node_count_for(len(w))
    return n, w * s


def select_topology(weights, skr_per_edge, capacity):
    """argmax over |E| <= C of sum w_ij S_ij; edge-local SKR makes this a top-C selection"""
    if capacity < 1:
        raise TopologyException(f'Source capacity must be >= 1, got {capacity}')
    n, scores = _score_vectors(weights, skr_per_edge)
    return Topology.from_indices(n, select_top_indices(scores, capacity))


def select_topology_exhaustive(weights, skr_per_edge, capacity):
    """Brute-force reference for select_topology; first maximizer in enumeration order wins"""
    n, scores = _score_vectors(weights, skr_per_edge)
    best, best_value = (), -math.inf
    for indices in feasible_index_sets(n, capacity):
        value = math.fsum(scores[i] for i in indices)
        if value > best_value:
            best, best_value = indices, value
    return Topology.from_indices(n, best)
