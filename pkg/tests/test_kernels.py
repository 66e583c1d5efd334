"""Bit-for-bit equivalence of the compiled and pure-Python kernel backends."""

import numpy as np
import pytest

import netgaps as ng
from netgaps.kernels import _core_py as pyk
from conftest import random_connected_graph, random_graph

cyk = pytest.importorskip("netgaps.kernels._core_cy",
                          reason="compiled backend not built")


def _graphs():
    rng = np.random.default_rng(123)
    gs = [random_graph(rng, 15, 0.3) for _ in range(5)]
    gs += [random_connected_graph(rng, 30, 20) for _ in range(5)]
    gs.append(ng.Graph.from_edges(4, []))
    gs.append(ng.Graph.from_edges(1, []))
    return gs


def test_bfs_and_components_and_triangles_match():
    for g in _graphs():
        indptr, indices = g.csr()
        for s in range(min(g.n, 5)):
            assert (pyk.bfs_distances(indptr, indices, s)
                    == cyk.bfs_distances(indptr, indices, s)).all()
        assert (pyk.connected_components(indptr, indices)
                == cyk.connected_components(indptr, indices)).all()
        assert (pyk.all_eccentricities(indptr, indices)
                == cyk.all_eccentricities(indptr, indices)).all()
        assert pyk.triangle_census(indptr, indices) == cyk.triangle_census(indptr, indices)


def test_bridges_match_and_agree_with_oracle():
    from oracles import is_bridge_by_recount
    for g in _graphs():
        us = np.ascontiguousarray(g.edge_array[:, 0])
        vs = np.ascontiguousarray(g.edge_array[:, 1])
        a = pyk.bridges(us, vs, g.n)
        b = cyk.bridges(us, vs, g.n)
        assert a.shape == b.shape and (a == b).all()
        got = {tuple(e) for e in a.tolist()}
        want = {e for e in g.edges() if is_bridge_by_recount(g, e)}
        assert got == want


def test_score_pairs_bitwise_equal():
    rng = np.random.default_rng(7)
    for g in _graphs():
        if g.n < 3:
            continue
        us = rng.integers(0, g.n, size=200).astype(np.int32)
        vs = rng.integers(0, g.n, size=200).astype(np.int32)
        keep = us != vs
        us, vs = us[keep], vs[keep]
        indptr, indices = g.csr()
        for method in range(7):
            a = pyk.score_pairs(indptr, indices, us, vs, method)
            b = cyk.score_pairs(indptr, indices, us, vs, method)
            # bitwise: float accumulation order is pinned in both backends
            assert (a == b).all()


def test_louvain_sweep_bitwise_equal():
    rng = np.random.default_rng(11)
    for g in _graphs():
        if g.num_edges == 0:
            continue
        indptr, indices = g.csr()
        indices = np.ascontiguousarray(indices)
        weights = rng.random(indices.shape[0])
        # symmetrize arc weights so both directions agree
        enc = {}
        for u in range(g.n):
            for idx in range(indptr[u], indptr[u + 1]):
                v = int(indices[idx])
                key = (min(u, v), max(u, v))
                if key in enc:
                    weights[idx] = enc[key]
                else:
                    enc[key] = weights[idx]
        strength = np.zeros(g.n)
        for u in range(g.n):
            strength[u] = weights[indptr[u]:indptr[u + 1]].sum()
        two_m = strength.sum()
        labels_a = np.arange(g.n, dtype=np.int32)
        labels_b = labels_a.copy()
        tot_a = strength.copy()
        tot_b = strength.copy()
        for sweep in range(3):
            order = np.random.default_rng(sweep).permutation(g.n).astype(np.int32)
            ma = pyk.louvain_sweep(indptr, indices, weights, strength,
                                   labels_a, tot_a, order, two_m)
            mb = cyk.louvain_sweep(indptr, indices, weights, strength,
                                   labels_b, tot_b, order, two_m)
            assert ma == mb
            assert (labels_a == labels_b).all()
            assert (tot_a == tot_b).all()


def test_labelprop_sweep_bitwise_equal():
    rng = np.random.default_rng(13)
    for g in _graphs():
        indptr, indices = g.csr()
        indices = np.ascontiguousarray(indices)
        labels_a = np.arange(g.n, dtype=np.int32)
        labels_b = labels_a.copy()
        for sweep in range(4):
            order = np.random.default_rng(100 + sweep).permutation(g.n).astype(np.int32)
            tie = np.random.default_rng(200 + sweep).integers(
                0, 2**64, size=g.n, dtype=np.uint64)
            ca = pyk.labelprop_sweep(indptr, indices, labels_a, order, tie)
            cb = cyk.labelprop_sweep(indptr, indices, labels_b, order, tie)
            assert ca == cb
            assert (labels_a == labels_b).all()


def test_detectors_identical_across_backends(karate, monkeypatch):
    from netgaps import community as comm
    from netgaps import kernels

    results = {}
    for impl in (pyk, cyk):
        monkeypatch.setattr(kernels, "louvain_sweep", impl.louvain_sweep)
        monkeypatch.setattr(kernels, "labelprop_sweep", impl.labelprop_sweep)
        results[impl.__name__] = (comm.louvain(karate, seed=3),
                                  comm.label_propagation(karate, seed=3))
    (la, pa), (lb, pb) = results.values()
    assert la == lb and pa == pb
