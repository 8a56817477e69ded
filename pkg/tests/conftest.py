import numpy as np
import pytest
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ufdecoder.lattice import build_torus_2d, build_torus_3d


@pytest.fixture(scope="session")
def torus3():
    return build_torus_2d(3)


@pytest.fixture(scope="session")
def torus5():
    return build_torus_2d(5)


@pytest.fixture(scope="session")
def torus8():
    return build_torus_2d(8)


@pytest.fixture(scope="session")
def cube3():
    return build_torus_3d(3)


def component_labels(graph, edge_mask):
    """Connected components of (V, edge_mask), independent of the decoder."""
    u, v = graph.edges[edge_mask].T
    n = graph.vertex_count
    adj = coo_matrix((np.ones(len(u)), (u, v)), shape=(n, n))
    return connected_components(adj, directed=False)[1]


def incidence_matrix(graph):
    """Dense vertex-by-edge incidence matrix (mod 2)."""
    m = np.zeros((graph.vertex_count, graph.edge_count), dtype=np.int64)
    for e, (a, b) in enumerate(graph.edges.tolist()):
        m[a, e] += 1
        m[b, e] += 1
    return m % 2


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
