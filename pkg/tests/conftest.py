import pytest

from relgouy.kinematics import BeamSpec, ModeIndex, make_kinematics
from relgouy.srmodes import make_nr_kinematics


@pytest.fixture
def spec():
    return BeamSpec(beta=0.5, epsilon=0.05)


@pytest.fixture
def beam(spec):
    return make_kinematics(spec)


@pytest.fixture
def nr_beam(spec):
    _, g = make_kinematics(spec)
    return make_nr_kinematics(spec), g


MODES_33 = [ModeIndex(m, n) for m in range(4) for n in range(4)]
