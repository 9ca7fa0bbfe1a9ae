import copy

from qnet_pumping.exceptions import ConfigException

# Worked four-node example: SKR matrix in bits/s, node labels 1..4 map to 0..3
WORKED_N4_SKR = [
    [0, 100, 200, 300],
    [100, 0, 400, 500],
    [200, 400, 0, 600],
    [300, 500, 600, 0],
]

# Five-node evaluation network
FIBER_N5_DISTANCES_KM = [
    [0, 50, 80, 20, 100],
    [50, 0, 30, 60, 90],
    [80, 30, 0, 70, 40],
    [20, 60, 70, 0, 10],
    [100, 90, 40, 10, 0],
]

FIBER_N5_QBER = [
    [0, 0.02, 0.03, 0.005, 0.04],
    [0.02, 0, 0.015, 0.025, 0.035],
    [0.03, 0.015, 0, 0.03, 0.02],
    [0.005, 0.025, 0.03, 0, 0.005],
    [0.04, 0.035, 0.02, 0.005, 0],
]

_FIBER_N5_NETWORK = {
    'n': 5,
    'capacity': 2,
    'attenuation_db_per_km': 0.2,
    'repetition_rate_hz': 1e6,
    'distances_km': FIBER_N5_DISTANCES_KM,
    'qber': FIBER_N5_QBER,
}

SCENARIOS = {
    'paper-n4': {
        'description': 'Four nodes, C=2, bare SKR matrix, xbar(0)=10, gamma=0.5, fixed channel',
        'n': 4,
        'capacity': 2,
        'direct_skr': WORKED_N4_SKR,
        'strategies': ['pf', 'greedy', 'rr'],
        'schedule': 'fixed:0.5',
        'xbar_init': 10.0,
        'channel_process': {'type': 'fixed'},
        'horizon': 2,
        'seeds': [0],
    },
    'paper-n5-fixed': dict(
        _FIBER_N5_NETWORK,
        description='Five nodes from the distance/QBER tables, fixed channel',
        strategies=['pf', 'greedy', 'rr'],
        schedule='harmonic',
        channel_process={'type': 'fixed'},
        horizon=1000,
        seeds=[0],
    ),
    'paper-n5-varying': dict(
        _FIBER_N5_NETWORK,
        description='Five nodes, QBER perturbed by up to 0.005 every 100 slots',
        strategies=['pf', 'greedy', 'rr'],
        schedule='harmonic',
        channel_process={'type': 'perturbation_walk', 'delta_max': 0.005, 'period': 100},
        horizon=1000,
        seeds=[0],
    ),
}


# Earlier names of the built-in scenarios
SCENARIO_ALIASES = {
    'worked-n4': 'paper-n4',
    'fiber-n5-fixed': 'paper-n5-fixed',
    'fiber-n5-varying': 'paper-n5-varying',
}


def list_scenarios(aliases=False):
    names = sorted(SCENARIOS)
    if aliases:
        names += sorted(SCENARIO_ALIASES)
    return names


def get_scenario(name):
    """Returns a private copy of a built-in scenario document"""
    name = SCENARIO_ALIASES.get(name, name)
    if name not in SCENARIOS:
        raise ConfigException(f'Unknown scenario {name!r}. Available options are: {", ".join(list_scenarios())}.')
    return copy.deepcopy(SCENARIOS[name])
