from .pairs import Pair, enumerate_pairs, pair_count, pair_index
from .matrices import PairMatrix, SkrMatrix, WeightMatrix
from .config import ChannelState, NetworkConfig, validate_config, load_config
from .topology import Topology
from .channel import (RngState, ChannelProcess, FixedChannel, FiniteIIDChannel, PerturbationWalk,
                      perturb_qber, sample, build_process)
