"""Produce incomplete copies of a network under three missing-edge models.

Two regimes, matching the two downstream experiments:

* edge-prediction mode: the degraded network may disconnect; the universe of
  "missing" edges is the induced subgraph on the observed vertices (which is
  the whole original for random/limited-degree deletion).
* connected mode: deletions never remove a bridge, used to build comparable
  suites for community-detection experiments.

Every run is a pure function of (graph, parameters, seed), so replicas can be
farmed out freely; a single run is sequential because deletions depend on the
current state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import (Graph, induced_subgraph, is_connected,
                    min_eccentricity_vertices)
from .seeds import derive_seed

CRAWLED = "crawled"
RANDOM = "random"
LIMITED = "limited"
INDUCED = "induced"  # suite-only provenance, not a degradation procedure

MODEL_KINDS = (CRAWLED, RANDOM, LIMITED)


class DegradationError(RuntimeError):
    """Raised when a degradation cannot proceed (disconnection, bounds)."""


@dataclass(frozen=True)
class DegradationModel:
    kind: str
    target_edges: int
    connected_variant: bool = False

    def __post_init__(self):
        if self.kind not in MODEL_KINDS + (INDUCED,):
            raise ValueError(f"unknown degradation kind {self.kind!r}")
        if self.target_edges <= 0:
            raise ValueError("target_edges must be positive")


@dataclass(frozen=True)
class DegradedNetwork:
    """Observed graph plus full provenance back to the original.

    ``vertex_map[i]`` is the original id of observed vertex ``i``;
    ``removed_edges`` (original ids, canonical) together with the observed
    edges reconstructs the degradation universe: the subgraph of the original
    induced by the observed vertices.
    """

    observed: Graph
    original_ref: str
    vertex_map: np.ndarray
    removed_edges: np.ndarray
    model: DegradationModel
    seed: int

    @property
    def kind(self) -> str:
        return self.model.kind

    def removed_in_observed_ids(self) -> np.ndarray:
        """Removed edges translated to observed-graph vertex ids."""
        if self.removed_edges.shape[0] == 0:
            return np.empty((0, 2), dtype=np.int64)
        back = np.full(int(self.vertex_map.max()) + 1, -1, dtype=np.int64)
        back[self.vertex_map] = np.arange(self.vertex_map.shape[0])
        out = back[self.removed_edges]
        lo = out.min(axis=1)
        hi = out.max(axis=1)
        return np.stack([lo, hi], axis=1)


def _check_target(g: Graph, target_edges: int) -> None:
    if not 0 < target_edges <= g.num_edges:
        raise DegradationError(
            f"target_edges={target_edges} outside 1..{g.num_edges}")


def _finish(g: Graph, kept: np.ndarray, vertex_full: bool, model: DegradationModel,
            seed: int) -> DegradedNetwork:
    """Assemble a DegradedNetwork from kept original-id edges."""
    kept = np.asarray(kept, dtype=np.int64).reshape(-1, 2)
    if vertex_full:
        vmap = np.arange(g.n, dtype=np.int64)
        observed = Graph.from_edges(g.n, kept, labels=g.labels)
        universe = g.edge_array
    else:
        verts = np.unique(kept)
        sub, vmap = induced_subgraph(g, verts)
        universe = sub.edge_array
        # edge ids back in original space
        universe = vmap[universe]
        remap = np.full(g.n, -1, dtype=np.int64)
        remap[vmap] = np.arange(vmap.shape[0])
        observed = Graph.from_edges(
            vmap.shape[0], remap[kept], labels=[g.label_of(int(v)) for v in vmap])
    removed = _edge_set_difference(universe, kept)
    return DegradedNetwork(observed, repr(g), vmap, removed, model, seed)


def _edge_set_difference(universe: np.ndarray, kept: np.ndarray) -> np.ndarray:
    scale = max(int(universe.max(initial=0)), int(kept.max(initial=0))) + 1
    enc_u = universe[:, 0].astype(np.int64) * scale + universe[:, 1]
    enc_k = kept[:, 0].astype(np.int64) * scale + kept[:, 1]
    removed = universe[~np.isin(enc_u, enc_k)]
    order = np.lexsort((removed[:, 1], removed[:, 0]))
    return np.ascontiguousarray(removed[order])


# -- crawled ------------------------------------------------------------------


def crawl(g: Graph, target_edges: int, seed: int) -> DegradedNetwork:
    """Breadth-first sample from a central start vertex.

    Vertices are processed in BFS queue order; processing a vertex collects
    every incident edge not yet collected, neighbors visited in uniform
    random order, stopping the moment ``target_edges`` edges are in hand.
    Every distance ring the budget fully covers is therefore complete, the
    frontier ring is cut off mid-traversal, and the sample stays connected
    (each collected edge touches an already-reached vertex). Observed
    vertices are the endpoints of collected edges.
    """
    _check_target(g, target_edges)
    if not is_connected(g):
        raise DegradationError("crawl requires a connected graph")
    rng = np.random.default_rng(seed)
    centers = min_eccentricity_vertices(g)
    start = centers[int(rng.integers(len(centers)))]

    seen = np.zeros(g.n, dtype=bool)
    seen[start] = True
    queue = [start]
    head = 0
    collected: list[tuple[int, int]] = []
    got: set[tuple[int, int]] = set()
    while head < len(queue) and len(collected) < target_edges:
        x = queue[head]
        head += 1
        nbrs = sorted(g.neighbors(x))
        for j in rng.permutation(len(nbrs)):
            y = nbrs[int(j)]
            key = (x, y) if x < y else (y, x)
            if key in got:
                continue
            got.add(key)
            collected.append(key)
            if not seen[y]:
                seen[y] = True
                queue.append(y)
            if len(collected) == target_edges:
                break
    kept = np.array(collected, dtype=np.int64)
    model = DegradationModel(CRAWLED, target_edges)
    return _finish(g, kept, vertex_full=False, model=model, seed=seed)


# -- random deletion ------------------------------------------------------------


def random_delete(g: Graph, target_edges: int, seed: int,
                  keep_connected: bool = False) -> DegradedNetwork:
    """Delete uniformly random edges until ``target_edges`` remain.

    In connected mode every deletion is drawn uniformly from the current
    non-bridge edges, so the result stays connected; this needs
    ``target_edges >= n - 1`` and a connected input.
    """
    _check_target(g, target_edges)
    rng = np.random.default_rng(seed)
    model = DegradationModel(RANDOM, target_edges, keep_connected)
    if not keep_connected:
        # one shuffle == repeated uniform deletion: the surviving set is a
        # uniformly random subset of the right size either way
        perm = rng.permutation(g.num_edges)
        kept = g.edge_array[np.sort(perm[:target_edges])]
        return _finish(g, kept, vertex_full=True, model=model, seed=seed)

    _check_connected_mode(g, target_edges)
    us = np.ascontiguousarray(g.edge_array[:, 0])
    vs = np.ascontiguousarray(g.edge_array[:, 1])
    while us.shape[0] > target_edges:
        deletable = np.flatnonzero(~_bridge_mask(us, vs, g.n))
        if deletable.size == 0:
            raise DegradationError("every remaining edge is a bridge")
        pick = deletable[int(rng.integers(deletable.size))]
        us = np.delete(us, pick)
        vs = np.delete(vs, pick)
    kept = np.stack([us, vs], axis=1)
    return _finish(g, kept, vertex_full=True, model=model, seed=seed)


def _check_connected_mode(g: Graph, target_edges: int) -> None:
    if not is_connected(g):
        raise DegradationError("connected mode requires a connected input")
    if target_edges < g.n - 1:
        raise DegradationError(
            f"cannot keep {g.n} vertices connected with {target_edges} edges "
            f"(spanning tree needs {g.n - 1})")


def _bridge_mask(us: np.ndarray, vs: np.ndarray, n: int) -> np.ndarray:
    """Boolean mask aligned with the edge arrays: True where the edge is a bridge."""
    br = kernels.bridges(us, vs, n)
    enc = us.astype(np.int64) * n + vs
    enc_br = br[:, 0].astype(np.int64) * n + br[:, 1]
    return np.isin(enc, enc_br)


# -- limited degree --------------------------------------------------------------


def limited_degree_delete(g: Graph, target_edges: int, seed: int,
                          keep_connected: bool = False,
                          _trace: list | None = None) -> DegradedNetwork:
    """Repeatedly delete an edge at a current maximum-degree vertex.

    Each step picks v uniformly among the current max-degree vertices and u
    uniformly from v's neighbors. Connected mode only deletes non-bridges and
    descends to lower degree classes when a class has no deletable edge.
    ``_trace``, if given, records the maximum degree before each deletion.
    """
    _check_target(g, target_edges)
    rng = np.random.default_rng(seed)
    model = DegradationModel(LIMITED, target_edges, keep_connected)
    if keep_connected:
        _check_connected_mode(g, target_edges)

    adj: list[set[int]] = [set(map(int, g.neighbors(v))) for v in range(g.n)]
    deg = g.degrees.copy()
    us0 = np.ascontiguousarray(g.edge_array[:, 0])
    vs0 = np.ascontiguousarray(g.edge_array[:, 1])
    alive = np.ones(g.num_edges, dtype=bool)
    row_of = {_enc(int(a), int(b), g.n): i
              for i, (a, b) in enumerate(g.edge_array)}
    m = g.num_edges

    while m > target_edges:
        if _trace is not None:
            _trace.append(int(deg.max()))
        if not keep_connected:
            dmax = int(deg.max())
            cand = np.flatnonzero(deg == dmax)
            v = int(cand[int(rng.integers(cand.size))])
            nbrs = sorted(adj[v])
            u = nbrs[int(rng.integers(len(nbrs)))]
        else:
            u = v = -1
            br = kernels.bridges(np.ascontiguousarray(us0[alive]),
                                 np.ascontiguousarray(vs0[alive]), g.n)
            bridge_set = set((br[:, 0].astype(np.int64) * g.n + br[:, 1]).tolist())
            for dval in np.unique(deg[deg > 0])[::-1]:
                cls = np.flatnonzero(deg == dval)
                for w in cls[rng.permutation(cls.size)]:
                    ok = [x for x in sorted(adj[int(w)])
                          if _enc(int(w), x, g.n) not in bridge_set]
                    if ok:
                        v = int(w)
                        u = ok[int(rng.integers(len(ok)))]
                        break
                if v >= 0:
                    break
            if v < 0:
                raise DegradationError("every remaining edge is a bridge")
        adj[u].discard(v)
        adj[v].discard(u)
        deg[u] -= 1
        deg[v] -= 1
        alive[row_of[_enc(u, v, g.n)]] = False
        m -= 1

    kept = g.edge_array[alive]
    return _finish(g, kept, vertex_full=True, model=model, seed=seed)


def _enc(a: int, b: int, n: int) -> int:
    return (a * n + b) if a < b else (b * n + a)


# -- community-experiment suite ---------------------------------------------------


@dataclass(frozen=True)
class CommunitySuite:
    """The four comparable networks of a community-detection experiment."""

    crawled: DegradedNetwork
    induced: DegradedNetwork
    random_deletion: DegradedNetwork
    limited_degree: DegradedNetwork

    def degraded(self) -> dict[str, DegradedNetwork]:
        return {CRAWLED: self.crawled, INDUCED: self.induced,
                RANDOM: self.random_deletion, LIMITED: self.limited_degree}


def make_community_suite(g: Graph, target_edges: int, seed: int) -> CommunitySuite:
    """Crawl, its induced subnetwork, and connected random/limited-degree
    networks reduced to the crawl's edge count; all share one vertex set."""
    _check_target(g, target_edges)
    if not is_connected(g):
        raise DegradationError("community suite requires a connected graph")
    crawled = crawl(g, target_edges, derive_seed(seed, "crawl"))
    ind_graph, vmap = induced_subgraph(g, crawled.vertex_map)
    if target_edges < ind_graph.n - 1:
        raise DegradationError(
            f"induced subnetwork of {ind_graph.n} vertices cannot stay connected "
            f"with {target_edges} edges")
    induced_dn = DegradedNetwork(
        ind_graph, repr(g), vmap, np.empty((0, 2), dtype=np.int64),
        DegradationModel(INDUCED, ind_graph.num_edges, True), seed)
    rand_dn = _lift(random_delete(ind_graph, target_edges,
                                  derive_seed(seed, "random"), keep_connected=True),
                    vmap, repr(g))
    lim_dn = _lift(limited_degree_delete(ind_graph, target_edges,
                                         derive_seed(seed, "limited"),
                                         keep_connected=True),
                   vmap, repr(g))
    return CommunitySuite(crawled, induced_dn, rand_dn, lim_dn)


def _lift(dn: DegradedNetwork, vmap: np.ndarray, original_ref: str) -> DegradedNetwork:
    """Re-express a degradation of the induced subnetwork in original ids."""
    lifted_map = vmap[dn.vertex_map]
    removed = vmap[dn.removed_edges] if dn.removed_edges.size else dn.removed_edges
    if removed.size:
        lo = removed.min(axis=1)
        hi = removed.max(axis=1)
        removed = np.stack([lo, hi], axis=1)
        order = np.lexsort((removed[:, 1], removed[:, 0]))
        removed = np.ascontiguousarray(removed[order])
    return DegradedNetwork(dn.observed, original_ref, lifted_map, removed,
                           dn.model, dn.seed)


# -- removed-edge accounting -------------------------------------------------------


@dataclass(frozen=True)
class RemovedEdgeCounts:
    removed_intra: int
    removed_inter: int
    remaining_inter: int


def classify_removed(dn: DegradedNetwork, truth) -> RemovedEdgeCounts:
    """Split removed edges by community crossing; count surviving crossings."""
    a = truth.assignment
    top = max(int(dn.vertex_map.max(initial=-1)),
              int(dn.removed_edges.max(initial=-1)))
    if top >= a.shape[0]:
        raise ValueError("partition does not cover the original vertex set")
    r = dn.removed_edges
    if r.size:
        cross = a[r[:, 0]] != a[r[:, 1]]
        removed_inter = int(cross.sum())
        removed_intra = int(r.shape[0] - removed_inter)
    else:
        removed_inter = removed_intra = 0
    e = dn.observed.edge_array
    if e.size:
        orig = dn.vertex_map[e]
        remaining_inter = int((a[orig[:, 0]] != a[orig[:, 1]]).sum())
    else:
        remaining_inter = 0
    return RemovedEdgeCounts(removed_intra, removed_inter, remaining_inter)
