import pytest

from hcbasis.graph import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph, petersen_graph


@pytest.fixture
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture
def petersen() -> Graph:
    return petersen_graph()


@pytest.fixture
def c6() -> Graph:
    return cycle_graph(6)


@pytest.fixture
def p4() -> Graph:
    return path_graph(4)


@pytest.fixture
def k33() -> Graph:
    return complete_bipartite(3, 3)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
