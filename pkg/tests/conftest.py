import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from probworkbench.models import Kind, Model

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CONSTRUCTIBLE = (Kind.CLASSICAL, Kind.QUANTUM_REAL, Kind.QUANTUM_COMPLEX)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def qubit():
    return Model(Kind.QUANTUM_COMPLEX, 2)


def ket(*amps):
    v = np.array(amps, dtype=complex)
    return v / np.linalg.norm(v)
