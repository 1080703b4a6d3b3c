import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from wcycle.graph import WeightedGraph  # noqa: E402

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def random_graph(rng, n, p, weights="real", connected=False):
    """G(n, p) with random weights; ``connected`` adds a random spanning tree first."""
    edges = {}
    if connected and n > 1:
        order = list(range(n))
        rng.shuffle(order)
        for k in range(1, n):
            a, b = order[k], order[rng.randrange(k)]
            edges[(min(a, b), max(a, b))] = None
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges[(u, v)] = None
    out = []
    for u, v in edges:
        if weights == "unit":
            w = 1.0
        elif weights == "ties":
            w = rng.choice([0.5, 1.0, 2.0])
        else:
            w = rng.uniform(0.05, 5.0)
        out.append((u, v, w))
    return WeightedGraph.from_edges(out, n=n)


def random_tree(rng, n, weights="real"):
    out = []
    for k in range(1, n):
        w = 1.0 if weights == "unit" else rng.uniform(0.1, 3.0)
        out.append((rng.randrange(k), k, w))
    return WeightedGraph.from_edges(out, n=n)


@pytest.fixture
def rng():
    return random.Random(20250316)


@pytest.fixture
def triangle():
    return WeightedGraph.from_edges([(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def chorded_square():
    # labels 1..4 map to ids 0..3
    return WeightedGraph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)],
                                    labels=["1", "2", "3", "4"])


@pytest.fixture
def path3():
    return WeightedGraph.from_edges([(0, 1), (1, 2)])


@pytest.fixture
def star3():
    return WeightedGraph.from_edges([(0, 1), (0, 2), (0, 3)])


# -- acceptance reporting -----------------------------------------------------

ACCEPTANCE_RESULTS = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        doc = report.nodeid.split("::")[-1]
        ACCEPTANCE_RESULTS.append((doc, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in ACCEPTANCE_RESULTS:
        label = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(outcome, outcome)
        terminalreporter.write_line(f"{label:5s} {name}")
