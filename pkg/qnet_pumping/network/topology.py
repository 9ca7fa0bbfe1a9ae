import numpy as np

from qnet_pumping.exceptions import TopologyException
from qnet_pumping.network.pairs import Pair, enumerate_pairs, pair_count, pair_index


class Topology:
    """Set of simultaneously pumped pairs"""
    def __init__(self, edges=(), capacity=None):
        pairs = [edge if isinstance(edge, Pair) else Pair.of(*edge) for edge in edges]
        if len(set(pairs)) != len(pairs):
            raise TopologyException(f'Duplicate pairs in topology: {pairs}')
        if capacity is not None and len(pairs) > capacity:
            raise TopologyException(f'Topology has {len(pairs)} edges but source capacity is {capacity}')
        self.edges = tuple(sorted(pairs))

    @classmethod
    def from_indices(cls, n, indices):
        pairs = enumerate_pairs(n)
        return cls([pairs[int(i)] for i in indices])

    def check_feasible(self, n, capacity):
        if len(self.edges) > capacity:
            raise TopologyException(f'Topology has {len(self.edges)} edges but source capacity is {capacity}')
        for edge in self.edges:
            if edge.b >= n:
                raise TopologyException(f'Edge {edge} references a node outside a {n}-node network')
        return self

    def indices(self, n):
        return [pair_index(n, edge.a, edge.b) for edge in self.edges]

    def mask(self, n):
        mask = np.zeros(pair_count(n), dtype=bool)
        mask[self.indices(n)] = True
        return mask

    def edge_list(self):
        return ';'.join(edge.label() for edge in self.edges)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, pair):
        if not isinstance(pair, Pair):
            pair = Pair.of(*pair)
        return pair in self.edges

    def __eq__(self, other):
        if isinstance(other, Topology):
            return self.edges == other.edges
        return False

    def __hash__(self):
        return hash(self.edges)

    def __repr__(self):
        edges_str = ', '.join(f'({e.a}, {e.b})' for e in self.edges)
        return f'Topology([{edges_str}])'
