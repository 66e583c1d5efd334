"""Seven neighborhood-overlap scorers behind one pluggable interface.

Built-in methods (lowercase ids, also the CSV column names):

========  =========================================================
cn        size of the common neighborhood
jaccard   overlap over union of neighborhoods
meetmin   overlap over the smaller neighborhood
geometric overlap squared over the degree product
aa        sum of 1/log(degree) over common neighbors
ra        sum of 1/degree over common neighbors
pa        degree product
========  =========================================================

Ratio scorers return 0 when an endpoint is isolated (no structural
evidence). ``aa`` uses the natural log; rankings, and hence AUC, do not
depend on the base. A plugin scorer is any function ``(graph, u, v) -> float``
registered under a new id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .graph import Graph

SCORER_IDS = ("cn", "jaccard", "meetmin", "geometric", "aa", "ra", "pa")

_KERNEL_METHOD = {
    "cn": kernels.CN,
    "jaccard": kernels.JACCARD,
    "meetmin": kernels.MEETMIN,
    "geometric": kernels.GEOMETRIC,
    "aa": kernels.AA,
    "ra": kernels.RA,
    "pa": kernels.PA,
}

_PLUGINS: dict[str, Callable[[Graph, int, int], float]] = {}


def register_scorer(name: str, fn: Callable[[Graph, int, int], float]) -> None:
    """Register a plugin scorer under a new id (e.g. model-based methods)."""
    if name in _KERNEL_METHOD:
        raise ValueError(f"{name!r} is a built-in scorer")
    _PLUGINS[name] = fn


def unregister_scorer(name: str) -> None:
    _PLUGINS.pop(name, None)


def available_scorers() -> tuple[str, ...]:
    return SCORER_IDS + tuple(sorted(_PLUGINS))


@dataclass(frozen=True)
class ScoredPairs:
    """Candidate pairs with one score column per method."""

    pairs: np.ndarray           # (k, 2) canonical, non-adjacent in graph
    scores: dict[str, np.ndarray]
    graph: Graph


def candidate_pairs(g: Graph) -> np.ndarray:
    """All unordered non-adjacent distinct vertex pairs, canonical order."""
    n = g.n
    if n < 2:
        return np.empty((0, 2), dtype=np.int32)
    adj = np.zeros((n, n), dtype=bool)
    e = g.edge_array
    adj[e[:, 0], e[:, 1]] = True
    iu, iv = np.triu_indices(n, 1)
    mask = ~adj[iu, iv]
    return np.stack([iu[mask].astype(np.int32), iv[mask].astype(np.int32)], axis=1)


def score(g: Graph, u: int, v: int, method: str) -> float:
    """Score one vertex pair; exact formula evaluation, always finite >= 0."""
    if u == v:
        raise ValueError("scorers are defined on distinct vertices")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError("vertex out of range")
    if method in _KERNEL_METHOD:
        indptr, indices = g.csr()
        us = np.array([u], dtype=np.int32)
        vs = np.array([v], dtype=np.int32)
        return float(kernels.score_pairs(indptr, indices, us, vs,
                                         _KERNEL_METHOD[method])[0])
    if method in _PLUGINS:
        return float(_PLUGINS[method](g, u, v))
    raise ValueError(f"unknown scorer {method!r}")


def score_all(g: Graph, pairs: np.ndarray, methods) -> ScoredPairs:
    """Batch-score ``pairs`` for every method; column order deterministic.

    Pairs must be non-adjacent, distinct and unique; results equal per-pair
    :func:`score` calls.
    """
    pairs = np.asarray(pairs)
    if pairs.size == 0:
        pairs = np.empty((0, 2), dtype=np.int32)
    pairs = pairs.reshape(-1, 2)
    lo = np.minimum(pairs[:, 0], pairs[:, 1]).astype(np.int32)
    hi = np.maximum(pairs[:, 0], pairs[:, 1]).astype(np.int32)
    if pairs.shape[0]:
        if (lo == hi).any():
            raise ValueError("pair with identical endpoints")
        enc = lo.astype(np.int64) * g.n + hi
        if np.unique(enc).size != enc.size:
            raise ValueError("duplicate pairs in input")
        eidx = g.edge_array
        if eidx.size:
            edge_enc = eidx[:, 0].astype(np.int64) * g.n + eidx[:, 1]
            if np.isin(enc, edge_enc).any():
                raise ValueError("adjacent pair in input")
    canon = np.stack([lo, hi], axis=1)
    indptr, indices = g.csr()
    us = np.ascontiguousarray(canon[:, 0])
    vs = np.ascontiguousarray(canon[:, 1])
    out: dict[str, np.ndarray] = {}
    for method in methods:
        if method in _KERNEL_METHOD:
            col = kernels.score_pairs(indptr, indices, us, vs,
                                      _KERNEL_METHOD[method])
        elif method in _PLUGINS:
            fn = _PLUGINS[method]
            col = np.array([fn(g, int(a), int(b)) for a, b in canon],
                           dtype=np.float64)
        else:
            raise ValueError(f"unknown scorer {method!r}")
        if col.size and (not np.isfinite(col).all() or (col < 0).any()):
            raise ValueError(f"scorer {method!r} produced a non-finite or "
                             "negative score")
        out[method] = col
    return ScoredPairs(canon, out, g)
