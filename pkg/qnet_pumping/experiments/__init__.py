from .commands import cmd_run, cmd_verify, cmd_example_n4, verify_convergence
from .scenarios import get_scenario, list_scenarios
from .spec import ExperimentSpec, RunSpec, build_spec
