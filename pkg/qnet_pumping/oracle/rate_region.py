import json
import logging

import numpy as np
from scipy.optimize import brentq

from qnet_pumping.exceptions import ConfigException
from qnet_pumping.network.pairs import enumerate_pairs
from qnet_pumping.network.topology import Topology
from qnet_pumping.oracle.utility import resolve_alpha, utility_gradient, utility_values
from qnet_pumping.scheduler.selection import feasible_index_sets, select_top_indices
from qnet_pumping.scheduler.strategies import ProportionalFair

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 100000
RELATIVE_TOL = 1e-6


class StepRule:
    LINE_SEARCH = 'line_search'
    OPEN_LOOP = 'open_loop'


class RateRegionSolution:
    """Optimal long-run average SKR vector and the topology mixtures that achieve it"""
    def __init__(self, n, alpha, x_star, states, pi, distributions, objective, duality_gap, iterations,
                 converged, excluded, history=None):
        self.n = n
        self.alpha = alpha
        self.x_star = x_star
        self.states = states
        self.pi = pi
        self.distributions = distributions
        self.objective = objective
        self.duality_gap = duality_gap
        self.iterations = iterations
        self.converged = converged
        self.excluded = excluded
        self.history = history

    @property
    def pairs(self):
        return enumerate_pairs(self.n)

    @property
    def included(self):
        return np.array([pair not in self.excluded for pair in self.pairs])

    @property
    def log_sum(self):
        return float(np.sum(np.log(self.x_star[self.included])))

    @property
    def geo_mean(self):
        return float(np.exp(self.log_sum / int(np.sum(self.included))))

    def to_dict(self):
        return {
            'alpha': self.alpha,
            'x_star': {pair.label(): float(value) for pair, value in zip(self.pairs, self.x_star)},
            'excluded': [pair.label() for pair in self.excluded],
            'distributions': [
                {
                    'state_id': state.key,
                    'pi': float(p),
                    'topologies': [{'edges': topology.edge_list(), 'probability': float(prob)}
                                   for topology, prob in distribution],
                }
                for state, p, distribution in zip(self.states, self.pi, self.distributions)
            ],
            'objective': self.objective,
            'log_sum': self.log_sum,
            'geo_mean': self.geo_mean,
            'duality_gap': self.duality_gap,
            'iterations': self.iterations,
            'converged': self.converged,
        }

    def __repr__(self):
        return (f'RateRegionSolution(objective={self.objective}, gap={self.duality_gap}, '
                f'iterations={self.iterations}, converged={self.converged})')


def write_solution(solution, path):
    with open(path, 'w') as fp:
        json.dump(solution.to_dict(), fp, indent=2)
    return path


def region_vertices(config, states):
    """Per state, the SKR vector of every feasible topology in enumeration order"""
    index_sets = list(feasible_index_sets(config.n, config.capacity))
    vertices = []
    for state in states:
        skr = config.skr_if_pumped(state)
        rows = np.zeros((len(index_sets), config.m))
        for row, indices in zip(rows, index_sets):
            row[list(indices)] = skr[list(indices)]
        vertices.append(rows)
    return vertices


class _ActiveSet:
    """Convex combination of vertices for one channel state"""
    def __init__(self, keys, vertices, weights):
        self.keys = list(keys)
        self.vertices = np.array(vertices, dtype=float)
        self.weights = np.array(weights, dtype=float)

    @property
    def point(self):
        return self.weights @ self.vertices

    def position(self, key):
        try:
            return self.keys.index(key)
        except ValueError:
            self.keys.append(key)
            self.vertices = np.vstack([self.vertices, np.zeros(self.vertices.shape[1])])
            self.weights = np.append(self.weights, 0.0)
            return len(self.keys) - 1

    def toward(self, key, vertex, gamma):
        index = self.position(key)
        self.vertices[index] = vertex
        if gamma >= 1.0:
            self.keys, self.vertices, self.weights = [key], vertex[None, :].copy(), np.array([1.0])
            return
        self.weights *= (1 - gamma)
        self.weights[index] += gamma

    def away(self, index, gamma, drop):
        self.weights *= (1 + gamma)
        self.weights[index] -= gamma
        if drop or self.weights[index] <= 0:
            keep = np.arange(len(self.keys)) != index
            self.keys = [k for k, flag in zip(self.keys, keep) if flag]
            self.vertices = self.vertices[keep]
            self.weights = self.weights[keep]

    def distribution(self, n):
        weights = self.weights / self.weights.sum()
        merged = {}
        for key, weight in zip(self.keys, weights):
            if weight > 0:
                merged[key] = merged.get(key, 0.0) + float(weight)
        return sorted(((Topology.from_indices(n, key), weight) for key, weight in merged.items()),
                      key=lambda item: item[0].edges)


def _line_search(x, d, alpha, gamma_max):
    """Largest-utility step in [0, gamma_max] along d: root of the directional derivative"""
    if alpha == 0:
        return gamma_max

    def slope(gamma):
        return float(np.sum(utility_gradient(x + gamma * d, alpha) * d))

    upper = gamma_max
    shrinking = d < 0
    if np.any(shrinking):
        boundary = float(np.min(-x[shrinking] / d[shrinking]))
        if boundary <= gamma_max:
            upper = boundary * (1 - 1e-12)
    if slope(upper) >= 0:
        return upper
    return brentq(slope, 0.0, upper, xtol=1e-15 * max(upper, 1e-300), maxiter=200)


def solve_utility_optimum(config,
                          states,
                          pi=None,
                          utility=None,
                          tol=None,
                          max_iter=DEFAULT_MAX_ITER,
                          step_rule=StepRule.LINE_SEARCH,
                          record_history=False):
    """Maximizes sum U(x) over the rate region with Frank-Wolfe.

    The linear subproblem for each channel state is the same top-C topology
    selection the scheduler uses, with weights U'(x). `line_search` runs the
    away-step variant with exact line search, `open_loop` runs vanilla
    Frank-Wolfe with step 2/(k+2).
    """
    alpha = resolve_alpha(utility if utility is not None else ProportionalFair())
    states = list(states)
    if not states:
        raise ConfigException('Need at least one channel state')
    pi = np.array([1.0] * len(states) if pi is None else pi, dtype=float)
    if pi.shape != (len(states),) or np.any(pi < 0) or abs(pi.sum() - 1.0) > 1e-12:
        raise ConfigException(f'pi must be a probability vector over {len(states)} states, got {pi.tolist()}')
    if step_rule not in (StepRule.LINE_SEARCH, StepRule.OPEN_LOOP):
        raise ConfigException(f'Unknown step rule {step_rule!r}')

    n, m, capacity = config.n, config.m, config.capacity
    skr = np.array([config.skr_if_pumped(state) for state in states])
    included = np.any(skr[pi > 0] > 0, axis=0)
    excluded = [pair for pair, flag in zip(enumerate_pairs(n), included) if not flag]
    if excluded:
        logger.info('Pairs never servable at a positive rate are excluded from the objective: %s',
                    ', '.join(pair.label() for pair in excluded))
    if not np.any(included):
        raise ConfigException('No pair can be served at a positive rate')

    def vertex(block, key):
        out = np.zeros(m)
        out[list(key)] = skr[block, list(key)]
        return out

    blocks = []
    for b in range(len(states)):
        keys = [(i,) for i in range(m)]
        blocks.append(_ActiveSet(keys, [vertex(b, key) for key in keys], np.full(m, 1.0 / m)))

    def objective(point):
        return float(np.sum(utility_values(point[included], alpha)))

    def gradient(point):
        g = np.zeros(m)
        g[included] = utility_gradient(point[included], alpha)
        return g

    x = pi @ np.array([block.point for block in blocks])
    f0 = objective(x)
    if tol is None:
        tol = max(RELATIVE_TOL * abs(f0), 1e-12)
    history = [f0] if record_history else None

    converged = False
    gap = np.inf
    iteration = 0
    for iteration in range(max_iter + 1):
        g = gradient(x)
        points = [block.point for block in blocks]
        fw_keys = [tuple(select_top_indices(g * skr[b], capacity).tolist()) for b in range(len(blocks))]
        fw_vertices = [vertex(b, key) for b, key in enumerate(fw_keys)]
        gap = float(sum(p * g @ (v - point) for p, v, point in zip(pi, fw_vertices, points)))
        if gap <= tol:
            converged = True
            break
        if iteration == max_iter:
            break

        if step_rule == StepRule.OPEN_LOOP:
            gamma = 2.0 / (iteration + 3)
            for block, key, v in zip(blocks, fw_keys, fw_vertices):
                block.toward(key, v, gamma)
        else:
            moves = []
            gamma_max = 1.0
            direction = np.zeros(m)
            for p, block, key, v, point in zip(pi, blocks, fw_keys, fw_vertices, points):
                away_scores = block.vertices @ g
                away_index = int(np.argmin(away_scores))
                fw_gain = g @ (v - point)
                away_gain = g @ point - away_scores[away_index]
                weight = block.weights[away_index]
                if fw_gain >= away_gain or weight >= 1:
                    moves.append(('fw', key, v, 1.0))
                    direction += p * (v - point)
                else:
                    block_max = weight / (1 - weight)
                    moves.append(('away', away_index, None, block_max))
                    gamma_max = min(gamma_max, block_max)
                    direction += p * (point - block.vertices[away_index])

            gamma = _line_search(x[included], direction[included], alpha, gamma_max)
            for block, (kind, key, v, block_max) in zip(blocks, moves):
                if kind == 'fw':
                    block.toward(key, v, gamma)
                else:
                    block.away(key, gamma, drop=gamma >= block_max)

        x = pi @ np.array([block.point for block in blocks])
        if record_history:
            history.append(objective(x))

    if not converged:
        logger.warning('Frank-Wolfe stopped after %d iterations with gap %g > tol %g', iteration, gap, tol)

    distributions = [block.distribution(n) for block in blocks]
    x_star = np.zeros(m)
    for b, (p, distribution) in enumerate(zip(pi, distributions)):
        for topology, weight in distribution:
            x_star += p * weight * vertex(b, tuple(topology.indices(n)))

    logger.debug('Frank-Wolfe finished: %d iterations, gap %g', iteration, gap)
    return RateRegionSolution(n=n,
                              alpha=alpha,
                              x_star=x_star,
                              states=states,
                              pi=pi,
                              distributions=distributions,
                              objective=objective(x_star),
                              duality_gap=gap,
                              iterations=iteration,
                              converged=converged,
                              excluded=excluded,
                              history=history)
