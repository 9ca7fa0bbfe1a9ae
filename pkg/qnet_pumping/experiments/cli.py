import argparse
import logging
import os
import sys

from qnet_pumping.__about__ import __version__
from qnet_pumping.exceptions import ConfigException, QnetException
from qnet_pumping.experiments.commands import (DEFAULT_VERIFY_HORIZON, DEFAULT_VERIFY_TOL, cmd_example_n4, cmd_run,
                                               cmd_verify)
from qnet_pumping.experiments.scenarios import SCENARIOS, list_scenarios
from qnet_pumping.experiments.spec import build_spec, load_document_or_scenario

logger = logging.getLogger(__name__)

LOG_LEVEL_ENV = 'QNET_LOG_LEVEL'

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_FAILURE = 2


def _add_source_arguments(parser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--config', help='JSON network/experiment document')
    source.add_argument('--scenario', choices=list_scenarios(aliases=True), help='built-in scenario')


def build_parser():
    parser = argparse.ArgumentParser(prog='qnet-pumping',
                                     description='Pumping schedules for entanglement-based QKD networks')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--log-level', default=os.environ.get(LOG_LEVEL_ENV, 'WARNING'),
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='simulate strategies and write trace CSVs')
    _add_source_arguments(run)
    run.add_argument('--strategy', action='append', help='pf | greedy | rr | alpha:<a>; repeatable')
    run.add_argument('--schedule', help='fixed:<g> | harmonic')
    run.add_argument('--process', choices=['fixed', 'iid', 'walk'])
    run.add_argument('--horizon', type=int)
    run.add_argument('--seed', type=int, action='append', help='repeatable')
    run.add_argument('--xbar-init', type=float)
    run.add_argument('--out', default='.', help='output directory')
    run.add_argument('--jobs', type=int, default=1, help='parallel worker processes')
    run.add_argument('--no-timestamp', action='store_true', help='omit the timestamp from trace metadata')

    verify = commands.add_parser('verify', help='check PF-PS convergence against the rate-region optimum')
    _add_source_arguments(verify)
    verify.add_argument('--tol', type=float, default=DEFAULT_VERIFY_TOL, help='relative per-pair tolerance')
    verify.add_argument('--horizon', type=int, default=DEFAULT_VERIFY_HORIZON)
    verify.add_argument('--seed', type=int, default=0)
    verify.add_argument('--process', choices=['fixed', 'iid'])
    verify.add_argument('--solution', help='write the oracle solution as JSON')

    commands.add_parser('example-n4', help='reproduce the four-node worked example')
    commands.add_parser('scenarios', help='list built-in scenarios')
    return parser


def _run(args):
    doc = load_document_or_scenario(args.config, args.scenario)
    spec = build_spec(doc,
                      strategies=args.strategy,
                      schedule=args.schedule,
                      process=args.process,
                      horizon=args.horizon,
                      seeds=args.seed,
                      out_dir=args.out,
                      xbar_init=args.xbar_init)
    traces = cmd_run(spec, jobs=args.jobs, timestamp=not args.no_timestamp)
    for trace in traces:
        print(f'{trace.strategy:>10} seed={trace.seed:<6} log_sum={trace.final.metrics.log_sum:.6f}')
    return EXIT_OK


def _verify(args):
    doc = load_document_or_scenario(args.config, args.scenario)
    spec = build_spec(doc, process=args.process, horizon=args.horizon, seeds=[args.seed])
    report = cmd_verify(spec.config, spec.process, tol=args.tol, horizon=spec.horizon, seed=args.seed,
                        solution_path=args.solution)
    return EXIT_OK if report.passed else EXIT_FAILURE


def _scenarios(args):
    for name in list_scenarios():
        print(f'{name:<18} {SCENARIOS[name]["description"]}')
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')

    handlers = {
        'run': _run,
        'verify': _verify,
        'example-n4': lambda _: EXIT_OK if cmd_example_n4() else EXIT_FAILURE,
        'scenarios': _scenarios,
    }
    try:
        return handlers[args.command](args)
    except ConfigException as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_INVALID
    except (QnetException, OSError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_FAILURE
