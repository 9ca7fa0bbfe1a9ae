import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from qnet_pumping.exceptions import ConvergenceException
from qnet_pumping.experiments.scenarios import get_scenario
from qnet_pumping.network.channel import RngState
from qnet_pumping.network.config import validate_config
from qnet_pumping.network.pairs import Pair, enumerate_pairs
from qnet_pumping.network.topology import Topology
from qnet_pumping.oracle.rate_region import solve_utility_optimum, write_solution
from qnet_pumping.scheduler.pumping import PumpingScheduler
from qnet_pumping.scheduler.schedules import FixedStep, HarmonicStep
from qnet_pumping.scheduler.strategies import Greedy, ProportionalFair, RoundRobin
from qnet_pumping.scheduler.trace import write_summary_csv, write_trace_csv
from qnet_pumping.utils import indent

logger = logging.getLogger(__name__)

DEFAULT_VERIFY_HORIZON = 100000
DEFAULT_VERIFY_TOL = 0.02


def execute_run(config, run, process, horizon, seed):
    scheduler = PumpingScheduler(config, run.strategy, run.schedule, process=process, xbar_init=run.xbar_init)
    return scheduler.run(horizon, seed=seed)


def trace_filename(trace, with_schedule=False):
    """trace_<strategy>_seed<seed>.csv, with the schedule after the strategy when a strategy has several runs"""
    name = trace.strategy.replace(':', '')
    if with_schedule:
        name += '_' + trace.schedule.replace(':', '')
    return f'trace_{name}_seed{trace.seed}.csv'


def cmd_run(spec, jobs=1, timestamp=True):
    """Runs every (strategy, seed) of the experiment and writes one trace CSV each plus summary.csv"""
    tasks = spec.tasks()
    args = [(spec.config, run, spec.process, spec.horizon, seed) for run, seed in tasks]
    logger.info('Running %d simulations of %d steps', len(tasks), spec.horizon)

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            traces = list(pool.map(execute_run, *zip(*args)))
    else:
        traces = [execute_run(*task_args) for task_args in args]

    out_dir = spec.out_dir or '.'
    os.makedirs(out_dir, exist_ok=True)
    shared = spec.shared_strategies()
    for trace in traces:
        filename = trace_filename(trace, with_schedule=trace.strategy in shared)
        write_trace_csv(trace, os.path.join(out_dir, filename), timestamp=timestamp)
    write_summary_csv(traces, os.path.join(out_dir, 'summary.csv'))
    logger.info('Wrote %d traces to %s', len(traces), out_dir)
    return traces


class VerifyReport:
    """Trajectory of PF-PS under a harmonic step compared against the rate-region optimum"""
    def __init__(self, pairs, xbar, solution, tol):
        self.pairs = pairs
        self.xbar = xbar
        self.solution = solution
        self.tol = tol
        included = solution.included
        self.relative_errors = np.full(len(pairs), np.nan)
        self.relative_errors[included] = np.abs(xbar[included] - solution.x_star[included]) / solution.x_star[included]

    @property
    def max_error(self):
        return float(np.nanmax(self.relative_errors))

    @property
    def passed(self):
        return self.solution.converged and self.max_error <= self.tol

    def lines(self):
        yield f'Rate-region optimum: objective={self.solution.objective:.6f} gap={self.solution.duality_gap:.3g} ' \
              f'iterations={self.solution.iterations} converged={self.solution.converged}'
        yield f'{"pair":>6} {"xbar(T)":>14} {"x_star":>14} {"rel_err":>10}'
        for pair, x, x_star, error in zip(self.pairs, self.xbar, self.solution.x_star, self.relative_errors):
            error_str = 'excluded' if np.isnan(error) else f'{error:.4%}'
            yield f'{pair.label():>6} {x:14.3f} {x_star:14.3f} {error_str:>10}'
        yield f'max relative error {self.max_error:.4%} (tol {self.tol:.2%}): {"PASS" if self.passed else "FAIL"}'


def verify_convergence(config, process, tol=DEFAULT_VERIFY_TOL, horizon=DEFAULT_VERIFY_HORIZON, seed=0,
                       oracle_tol=None):
    states, pi = process.support()
    solution = solve_utility_optimum(config, states, pi, utility=ProportionalFair(), tol=oracle_tol)
    scheduler = PumpingScheduler(config, ProportionalFair(), HarmonicStep(), process=process, keep_trace=False)
    final = scheduler.run(horizon, seed=seed).final
    return VerifyReport(config.pairs, final.xbar, solution, tol)


def cmd_verify(config, process, tol=DEFAULT_VERIFY_TOL, horizon=DEFAULT_VERIFY_HORIZON, seed=0,
               solution_path=None, out=None):
    out = out or sys.stdout
    report = verify_convergence(config, process, tol=tol, horizon=horizon, seed=seed)
    if solution_path:
        write_solution(report.solution, solution_path)
    for line in report.lines():
        print(line, file=out)
    if not report.solution.converged:
        raise ConvergenceException(f'Rate-region oracle did not reach its gap tolerance '
                                   f'(gap {report.solution.duality_gap:.3g})')
    return report


def one_based_label(pair):
    return f'({pair.a + 1},{pair.b + 1})'


def _one_based_pair(a, b):
    return Pair(a - 1, b - 1)


# Pumped pairs the worked example reports for RR-PS, 1-based labels
RR_EXAMPLE_SELECTIONS = [
    Topology([_one_based_pair(1, 4), _one_based_pair(1, 3)]),
    Topology([_one_based_pair(1, 2), _one_based_pair(2, 3)]),
]

EXAMPLE_NOTES = {
    'G t=2 xbar(3,4)': 'printed as 455; 305 + 0.5 (600 - 305) = 452.5',
}


def _example_runs(config, decay_unserved):
    runs = {}
    for strategy in (ProportionalFair(), Greedy()):
        scheduler = PumpingScheduler(config, strategy, FixedStep(0.5), xbar_init=10.0,
                                     decay_unserved=decay_unserved)
        runs[strategy.name] = scheduler.run(2).records
    scheduler = PumpingScheduler(config, RoundRobin(), FixedStep(0.5), xbar_init=10.0,
                                 decay_unserved=decay_unserved)
    rng = RngState(0)
    for t, topology in enumerate(RR_EXAMPLE_SELECTIONS, start=1):
        scheduler.step(t, rng, topology=topology)
    runs['rr'] = scheduler.records
    return runs


def example_checks(runs):
    """(description, computed, expected, note) for every value the worked example prints"""
    def xbar(strategy, t, a, b):
        return runs[strategy][t].xbar[enumerate_pairs(4).index(_one_based_pair(a, b))]

    def edges(strategy, t):
        return runs[strategy][t].topology

    checks = [
        ('PF t=1 edges', edges('pf', 1), Topology([_one_based_pair(3, 4), _one_based_pair(2, 4)])),
        ('PF t=1 xbar(3,4)', xbar('pf', 1, 3, 4), 305.0),
        ('PF t=1 xbar(2,4)', xbar('pf', 1, 2, 4), 255.0),
        ('PF t=2 edges', edges('pf', 2), Topology([_one_based_pair(2, 3), _one_based_pair(1, 4)])),
        ('G t=1 edges', edges('greedy', 1), Topology([_one_based_pair(3, 4), _one_based_pair(2, 4)])),
        ('G t=2 edges', edges('greedy', 2), Topology([_one_based_pair(3, 4), _one_based_pair(2, 4)])),
        ('G t=2 xbar(2,4)', xbar('greedy', 2, 2, 4), 377.5),
        ('G t=2 xbar(3,4)', xbar('greedy', 2, 3, 4), 452.5),
        ('RR t=1 xbar(1,4)', xbar('rr', 1, 1, 4), 155.0),
        ('RR t=1 xbar(1,3)', xbar('rr', 1, 1, 3), 105.0),
        ('RR t=2 xbar(1,2)', xbar('rr', 2, 1, 2), 55.0),
        ('RR t=2 xbar(2,3)', xbar('rr', 2, 2, 3), 205.0),
    ]
    results = []
    for description, computed, expected in checks:
        if isinstance(expected, Topology):
            ok = computed == expected
        else:
            ok = abs(computed - expected) <= 1e-9
        results.append((description, computed, expected, ok, EXAMPLE_NOTES.get(description, '')))
    return results


def _format_edges(topology):
    return ' '.join(one_based_label(edge) for edge in topology.edges) or '-'


def _print_runs(runs, pairs, out, level):
    header = ' '.join(f'{one_based_label(pair):>8}' for pair in pairs)
    for strategy, records in runs.items():
        print(f'{indent(level)}{strategy}', file=out)
        print(f'{indent(level + 1)}{"t":>2} {"pumped":<12} {header}', file=out)
        for record in records:
            values = ' '.join(f'{value:8.2f}' for value in record.xbar)
            print(f'{indent(level + 1)}{record.t:>2} {_format_edges(record.topology):<12} {values}', file=out)


def cmd_example_n4(out=None):
    """Prints the two-step trajectories of the four-node example and checks the printed values"""
    out = out or sys.stdout
    config = validate_config(get_scenario('paper-n4'))
    pairs = config.pairs

    print('Four-node example, C=2, xbar(0)=10, gamma=0.5 (nodes numbered from 1)', file=out)
    print('Only pumped pairs updated, as the worked example tabulates:', file=out)
    held = _example_runs(config, decay_unserved=False)
    _print_runs(held, pairs, out, level=1)
    print('Every pair updated (unpumped pairs served 0):', file=out)
    _print_runs(_example_runs(config, decay_unserved=True), pairs, out, level=1)

    print('Checks:', file=out)
    all_ok = True
    for description, computed, expected, ok, note in example_checks(held):
        all_ok = all_ok and ok
        if isinstance(expected, Topology):
            computed, expected = _format_edges(computed), _format_edges(expected)
        note_str = f'  [{note}]' if note else ''
        print(f'{indent(1)}{"ok  " if ok else "FAIL"} {description}: {computed} (expected {expected}){note_str}',
              file=out)
    return all_ok
