from qnet_pumping.exceptions import QnetException, ConfigException
from qnet_pumping.network import NetworkConfig, ChannelState, Topology, validate_config, load_config
from qnet_pumping.scheduler import run_schedule


def solve_optimum(config, process=None, utility=None, **kwargs):
    """Rate-region optimum for the stationary distribution of a fixed or finite i.i.d. channel"""
    from qnet_pumping.network.channel import FixedChannel
    from qnet_pumping.oracle import solve_utility_optimum

    process = process if process is not None else FixedChannel(config.base_state())
    states, pi = process.support()
    return solve_utility_optimum(config, states, pi, utility=utility, **kwargs)
