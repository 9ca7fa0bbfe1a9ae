import numpy as np
import pytest
from hypothesis import given, strategies as st

from qnet_pumping.exceptions import DomainException, TopologyException
from qnet_pumping.network import Pair, Topology
from qnet_pumping.physics import binary_entropy, instantaneous_skr, raw_key_rate, secret_key_rate, transmissivity

probabilities = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


class TestBinaryEntropy:
    @pytest.mark.parametrize('x, expected', [(0.5, 1.0), (0.0, 0.0), (1.0, 0.0), (0.005, 0.045415), (0.11, 0.4999)])
    def test_values(self, x, expected):
        assert binary_entropy(x) == pytest.approx(expected, abs=1e-4)

    @given(probabilities)
    def test_symmetric(self, x):
        assert binary_entropy(x) == pytest.approx(binary_entropy(1 - x), abs=1e-12)

    @given(probabilities)
    def test_bounded(self, x):
        assert 0.0 <= binary_entropy(x) <= 1.0 + 1e-12

    def test_symmetric_grid(self):
        x = np.linspace(0.0, 1.0, 10001)
        h = binary_entropy(x)
        assert np.allclose(h, binary_entropy(1 - x), rtol=0, atol=1e-12)
        assert np.allclose(h, h[::-1], rtol=0, atol=1e-12)
        assert h.min() >= 0.0 and h.max() <= 1.0 + 1e-12
        assert h[5000] == pytest.approx(1.0)

    def test_concave(self):
        x = np.linspace(1e-4, 1 - 1e-4, 10000)
        h = binary_entropy(x)
        assert np.all(h[1:-1] >= (h[:-2] + h[2:]) / 2 - 1e-12)

    def test_array_input(self):
        h = binary_entropy(np.array([0.0, 0.5, 1.0]))
        assert h.tolist() == [0.0, 1.0, 0.0]

    @pytest.mark.parametrize('x', [-0.1, 1.1, float('nan')])
    def test_domain(self, x):
        with pytest.raises(DomainException):
            binary_entropy(x)


class TestTransmissivity:
    def test_values(self):
        assert transmissivity(50, 0.2) == pytest.approx(0.1, abs=1e-12)
        assert transmissivity(10, 0.2) == pytest.approx(0.6309573, abs=1e-7)
        assert transmissivity(0, 0.2) == 1.0

    @given(st.floats(min_value=0, max_value=500), st.floats(min_value=0, max_value=500))
    def test_monotone(self, a, b):
        short, long = sorted([a, b])
        assert transmissivity(long, 0.2) <= transmissivity(short, 0.2) * (1 + 1e-12)

    def test_domain(self):
        with pytest.raises(DomainException):
            transmissivity(-1, 0.2)
        with pytest.raises(DomainException):
            transmissivity(10, 0)


class TestSecretKeyRate:
    def test_raw_key_rate(self):
        assert raw_key_rate(0.1, 1e6) == pytest.approx(1e5)
        with pytest.raises(DomainException):
            raw_key_rate(0.0, 1e6)
        with pytest.raises(DomainException):
            raw_key_rate(0.5, 0)

    def test_half_qber_gives_nothing(self):
        assert secret_key_rate(0.5, 1e6, 0.5) == 0.0

    @given(st.floats(min_value=0.0, max_value=0.5), st.floats(min_value=0.0, max_value=0.5))
    def test_decreasing_in_qber(self, a, b):
        low, high = sorted([a, b])
        assert secret_key_rate(0.1, 1e6, high) <= secret_key_rate(0.1, 1e6, low) + 1e-6

    def test_five_node_rates(self, fiber_n5_config):
        skr = fiber_n5_config.skr_if_pumped(fiber_n5_config.base_state())
        expected = [85856, 20236, 380027, 7577, 222967, 52454, 12380, 32072, 136072, 602303]
        assert skr == pytest.approx(expected, rel=1e-3)
        assert skr[-1] == pytest.approx(602302, abs=5)

    def test_instantaneous_direct(self, worked_n4_config):
        skr = instantaneous_skr(worked_n4_config, worked_n4_config.base_state(), Topology([Pair(2, 3)]))
        assert skr[2, 3] == 600
        assert skr[3, 2] == 600
        assert skr.as_vector().tolist() == [0, 0, 0, 0, 0, 600]

    def test_instantaneous_over_capacity(self, worked_n4_config):
        with pytest.raises(TopologyException):
            instantaneous_skr(worked_n4_config, worked_n4_config.base_state(),
                              Topology([(0, 1), (0, 2), (0, 3)]))
