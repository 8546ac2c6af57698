import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from intinfo.dist_core import JointDistribution, VarSpec, joint_from_bayesnet
from intinfo.harness import copy_chain_net, copy_pair_net, noisy_xor_triangle_net, xor_net


def binary_vars(*names):
    return tuple(VarSpec(n, 2) for n in names)


def dirichlet_joint(seed, cards=(2, 2, 2), names="XYZW"):
    rng = np.random.default_rng(seed)
    probs = rng.dirichlet(np.ones(int(np.prod(cards)))).reshape(cards)
    return JointDistribution(tuple(VarSpec(n, c) for n, c in zip(names, cards)), probs)


@pytest.fixture
def xor_joint():
    return joint_from_bayesnet(xor_net())


@pytest.fixture
def copy_joint():
    return joint_from_bayesnet(copy_chain_net())


@pytest.fixture
def copy_pair():
    return copy_pair_net()


@pytest.fixture
def noisy_xor():
    return noisy_xor_triangle_net()


@pytest.fixture
def independent_joint():
    return JointDistribution(binary_vars("X", "Y", "Z"), np.full((2, 2, 2), 0.125))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
