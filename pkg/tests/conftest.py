import numpy as np
import pytest

from cocoonsim.graph import SocialGraph

ACCEPTANCE_RESULTS = []


def graph_from(viewpoints, r_edges=(), emotions=None, faiths=None, comments=()):
    """Small hand-built graph for hand-traced fixtures."""
    n = len(viewpoints)
    emotions = np.zeros(n) if emotions is None else emotions
    faiths = np.full(n, 0.5) if faiths is None else faiths
    edges = np.array(r_edges, dtype=np.int64).reshape(-1, 2)
    g = SocialGraph(np.array(viewpoints, float), np.array(emotions, float), np.array(faiths, float),
                    edges[:, 0], edges[:, 1])
    for c, j in comments:
        g.add_comment_edge(c, j)
    return g


@pytest.fixture(scope="session")
def make_graph():
    return graph_from


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
