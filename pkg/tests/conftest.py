import random

import pytest
from hypothesis import HealthCheck, settings

from leavitt.catalog import catalog
from leavitt.field import using_field
from leavitt.graph import build_graph, rose

settings.register_profile(
    "lpa", deadline=None, derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("lpa")

SINK_GRAPH = """
vertex a
vertex b
vertex c
edge f a b
edge g a a
edge h b c
edge k a c
"""


@pytest.fixture(autouse=True)
def rational_field():
    with using_field("rational"):
        yield


@pytest.fixture
def g2():
    return rose(2)


@pytest.fixture
def g3():
    return rose(3)


@pytest.fixture
def sink_graph():
    """Three vertices; c is a sink, a has three out-edges."""
    return build_graph(SINK_GRAPH)


@pytest.fixture
def cat():
    return catalog()


@pytest.fixture
def rng():
    return random.Random(20240607)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
