import os
import sys
from pathlib import Path

import pytest

from nhc import kernels
from nhc.graph import DynamicGraph
from nhc.io import read_edge_list

DATA = Path(__file__).resolve().parents[1] / "src" / "nhc" / "data"


@pytest.fixture(scope="session")
def karate_path():
    return DATA / "karate.txt"


@pytest.fixture
def karate(karate_path):
    return read_edge_list(karate_path)


@pytest.fixture
def two_triangles():
    return DynamicGraph([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


backends = [pytest.param(kernels.purepy, id="python")]
if kernels.compiled is not None:
    backends.append(pytest.param(kernels.compiled, id="compiled"))


@pytest.fixture(params=backends)
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
