"""Shared fixtures and the per-criterion acceptance report."""

from __future__ import annotations

import random

import pytest

from subarch import Graph, is_connected, load_bundled


@pytest.fixture(scope="session")
def guadalupe():
    return load_bundled("ibmq_guadalupe")


@pytest.fixture(scope="session")
def rigetti():
    return load_bundled("rigetti_16")


@pytest.fixture(scope="session")
def sycamore():
    return load_bundled("sycamore_23")


def random_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def random_connected_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    while True:
        g = random_graph(rng, n, p)
        if is_connected(g):
            return g


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = []
    for status in ("passed", "failed", "error", "skipped"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" in nodeid and getattr(report, "when", "call") == "call":
                name = nodeid.split("::")[-1]
                lines.append((name, status.upper()))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"{status:8s} {name}")
