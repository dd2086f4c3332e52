import random
from pathlib import Path

import pytest

from arrtool.arrangement import braid_arrangement, load_arrangement
from arrtool.orlik_solomon import build_os
from arrtool.weights import load_weight_matrix

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

LATTICE_FIXTURES = ["braid.json", "generic3.json", "pencil3.json", "boolean3.json", "points3.json", "single.json"]


@pytest.fixture(scope="session")
def braid():
    return braid_arrangement()


@pytest.fixture(scope="session")
def braid_os(braid):
    return build_os(braid)


@pytest.fixture(scope="session")
def braid_a():
    return load_weight_matrix(str(FIXTURES / "braid_a.json"))


@pytest.fixture
def rng():
    return random.Random(20240611)


def fixture_arrangement(name):
    return load_arrangement(str(FIXTURES / name))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
