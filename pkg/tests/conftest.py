import pytest

from qnet_pumping.experiments.scenarios import get_scenario
from qnet_pumping.network.config import validate_config


@pytest.fixture
def worked_n4_config():
    return validate_config(get_scenario('paper-n4'))


@pytest.fixture
def fiber_n5_config():
    return validate_config(get_scenario('paper-n5-fixed'))
