"""Shared fixtures: enumerated true fronts for the tiny mission instances."""

import pytest

from support import (
    enumerate_relay_objectives,
    enumerate_twoway_objectives,
    fast_front_indices,
    tiny_relay_scenario,
    tiny_twoway_scenario,
)
from swarmbeam.analysis import hypervolume, reference_point


def _truth(objectives):
    front = objectives[fast_front_indices(objectives)]
    reference = reference_point(front)
    return {
        "objectives": objectives,
        "front": front,
        "reference": reference,
        "hypervolume": hypervolume(front, reference),
    }


@pytest.fixture(scope="session")
def relay_truth():
    """Exhaustive objective table and true front of the tiny relay instance."""
    return _truth(enumerate_relay_objectives(tiny_relay_scenario()))


@pytest.fixture(scope="session")
def twoway_truth():
    """Exhaustive objective table and true front of the tiny two-way instance."""
    return _truth(enumerate_twoway_objectives(tiny_twoway_scenario()))
