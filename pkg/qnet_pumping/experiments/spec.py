import numpy as np

from qnet_pumping.exceptions import ConfigException
from qnet_pumping.experiments.scenarios import get_scenario
from qnet_pumping.network.channel import build_process
from qnet_pumping.network.config import load_document, validate_config
from qnet_pumping.scheduler.schedules import parse_schedule
from qnet_pumping.scheduler.strategies import parse_strategy
from qnet_pumping.utils import ProcessType

DEFAULT_HORIZON = 1000
DEFAULT_SCHEDULE = 'harmonic'


class RunSpec:
    def __init__(self, strategy, schedule, xbar_init=None):
        self.strategy = parse_strategy(strategy)
        self.schedule = parse_schedule(schedule)
        self.xbar_init = xbar_init

    def __eq__(self, other):
        return isinstance(other, RunSpec) and vars(self) == vars(other)

    def __repr__(self):
        return f'RunSpec(strategy={self.strategy.label}, schedule={self.schedule.label}, xbar_init={self.xbar_init})'


class ExperimentSpec:
    """Network, strategy runs, channel process, horizon and seeds of one experiment"""
    def __init__(self, config, runs, process_doc=None, horizon=DEFAULT_HORIZON, seeds=(0,), out_dir=None):
        if not isinstance(horizon, (int, np.integer)) or isinstance(horizon, bool) or horizon < 1:
            raise ConfigException(f'Horizon must be an integer >= 1, got {horizon!r}')
        if not runs:
            raise ConfigException('An experiment needs at least one strategy')
        if seeds is not None and not isinstance(seeds, (list, tuple)):
            raise ConfigException(f'Seeds must be a list of integers, got {seeds!r}')
        seeds = list(seeds or [])
        if not seeds:
            raise ConfigException('An experiment needs at least one seed')
        for seed in seeds:
            if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool) or not 0 <= seed < 2 ** 64:
                raise ConfigException(f'Seeds must be integers in [0, 2^64), got {seed!r}')
        if len(set(seeds)) != len(seeds):
            raise ConfigException(f'Duplicate seeds: {seeds}')
        runs = list(runs)
        keys = [(run.strategy.label, run.schedule.label) for run in runs]
        duplicates = sorted({key for key in keys if keys.count(key) > 1})
        if duplicates:
            raise ConfigException(f'Duplicate runs for (strategy, schedule): {duplicates}')
        self.config = config
        self.runs = runs
        self.process_doc = process_doc or {'type': ProcessType.FIXED}
        self.process = build_process(self.process_doc, config)
        self.horizon = int(horizon)
        self.seeds = [int(seed) for seed in seeds]
        self.out_dir = out_dir

    def tasks(self):
        """(run, seed) pairs in output order"""
        return [(run, seed) for run in self.runs for seed in self.seeds]

    def shared_strategies(self):
        """Strategy labels that appear in more than one run"""
        labels = [run.strategy.label for run in self.runs]
        return {label for label in labels if labels.count(label) > 1}

    def __repr__(self):
        return (f'ExperimentSpec(runs={self.runs}, process={self.process_doc}, horizon={self.horizon}, '
                f'seeds={self.seeds}, out_dir={self.out_dir!r})')


def _process_doc(doc, process):
    current = doc.get('channel_process') or {'type': ProcessType.FIXED}
    if isinstance(current, str):
        current = {'type': current}
    if process is None:
        return current
    wanted = ProcessType.ALIASES.get(process)
    if wanted is None:
        raise ConfigException(f'Unknown channel process {process!r}. Available options are: fixed, iid, walk.')
    if ProcessType.ALIASES.get(current.get('type')) == wanted:
        return current
    return {'type': wanted}


def load_document_or_scenario(config_path=None, scenario=None):
    if bool(config_path) == bool(scenario):
        raise ConfigException('Provide exactly one of --config or --scenario')
    return load_document(config_path) if config_path else get_scenario(scenario)


def build_spec(doc, strategies=None, schedule=None, process=None, horizon=None, seeds=None, out_dir=None,
               xbar_init=None):
    """ExperimentSpec from a config document; explicit arguments override document keys"""
    config = validate_config(doc)
    schedule = schedule or doc.get('schedule', DEFAULT_SCHEDULE)
    xbar_init = xbar_init if xbar_init is not None else doc.get('xbar_init')

    if strategies:
        runs = [RunSpec(strategy, schedule, xbar_init) for strategy in strategies]
    elif doc.get('runs'):
        for run in doc['runs']:
            if not isinstance(run, dict) or 'strategy' not in run:
                raise ConfigException(f'Each entry of "runs" needs a "strategy", got {run!r}')
        runs = [RunSpec(run['strategy'], run.get('schedule', schedule), run.get('xbar_init', xbar_init))
                for run in doc['runs']]
    else:
        runs = [RunSpec(strategy, schedule, xbar_init) for strategy in doc.get('strategies', ['pf'])]

    return ExperimentSpec(config=config,
                          runs=runs,
                          process_doc=_process_doc(doc, process),
                          horizon=horizon if horizon is not None else doc.get('horizon', DEFAULT_HORIZON),
                          seeds=seeds if seeds else doc.get('seeds', [0]),
                          out_dir=out_dir)
