import importlib.resources

import numpy as np
import pytest

import netgaps as ng


def karate_path():
    return importlib.resources.files("netgaps").joinpath("data/karate.edges")


@pytest.fixture(scope="session")
def karate():
    return ng.load_edge_list(karate_path())


@pytest.fixture()
def fixture5():
    """Five-vertex scorer fixture: a,b,c,d,e = 0..4."""
    return ng.Graph.from_edges(5, [(0, 2), (1, 2), (0, 3), (1, 3), (0, 4)])


def random_graph(rng, n, p) -> ng.Graph:
    """Erdos-Renyi-style helper for property tests."""
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    return ng.Graph.from_edges(n, edges)


def random_connected_graph(rng, n, extra) -> ng.Graph:
    """Random spanning tree plus ``extra`` random chords."""
    edges = set()
    for v in range(1, n):
        u = int(rng.integers(v))
        edges.add((u, v))
    tries = 0
    while len(edges) < n - 1 + extra and tries < 50 * (extra + 1):
        u, v = sorted(rng.integers(n, size=2).tolist())
        tries += 1
        if u != v:
            edges.add((u, v))
    return ng.Graph.from_edges(n, sorted(edges))
