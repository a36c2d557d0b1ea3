import numpy as np
import pytest

from qals import BathParams, Schedule
from qals import ising


@pytest.fixture
def linear():
    return Schedule()


@pytest.fixture
def ferro2():
    """n=2 ferromagnet with fields: ground state (+1, +1), energy -3."""
    g = ising.path_graph(2)
    return ising.ProblemInstance(g, (1.0, 1.0), {(0, 1): 1.0})


@pytest.fixture
def ring4():
    return ising.random_instance(ising.ring_graph(4), "uniform_range", 9)


@pytest.fixture
def chain6():
    """Asymmetric 6-qubit chain with +-1 couplers and generic fields."""
    g = ising.path_graph(6)
    J = dict(zip(g.sorted_edges, [1.0, -1.0, 1.0, 1.0, -1.0]))
    return ising.ProblemInstance(g, (0.9, -0.6, 0.8, 1.1, -0.7, 0.5), J)


@pytest.fixture
def warm_bath():
    return BathParams(temperature=0.5, eta=0.1, omega_c=8.0)


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    return ising.SpinState(tuple(int(s) for s in rng.choice([-1, 1], n)))
