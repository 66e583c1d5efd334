"""Partition metrics (AUC, modularity, NMI) and the two community detectors
used to measure missing-data impact: Louvain and asynchronous label
propagation.

Both detectors are seeded and deterministic: visit orders and tie-break draws
come from a single ``numpy`` generator per run, while the sweep kernels stay
pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graph import Graph
from .seeds import derive_seed

_MAX_SWEEPS = 256
_MAX_LEVELS = 64
_MAX_LP_SWEEPS = 100


@dataclass(frozen=True)
class Partition:
    """Disjoint community assignment; ids dense 0..k-1 in first-seen order."""

    assignment: np.ndarray
    k: int

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        arr = np.asarray(labels)
        if arr.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        dense = np.empty(arr.shape[0], dtype=np.int32)
        seen: dict = {}
        for i, lab in enumerate(arr.tolist()):
            c = seen.setdefault(lab, len(seen))
            dense[i] = c
        dense.setflags(write=False)
        return cls(dense, len(seen))

    @property
    def n(self) -> int:
        return self.assignment.shape[0]

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k)

    def restrict(self, vertices) -> "Partition":
        """Partition induced on a vertex subset (ids relabelled densely)."""
        vs = np.asarray(vertices, dtype=np.int64)
        return Partition.from_labels(self.assignment[vs])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Partition)
                and self.k == other.k
                and self.assignment.shape == other.assignment.shape
                and bool((self.assignment == other.assignment).all()))

    def __hash__(self):
        return hash((self.k, self.assignment.tobytes()))


@dataclass(frozen=True)
class AucResult:
    """AUC with its comparison tallies: auc = (n_wins + 0.5*n_ties) / n."""

    auc: float
    n_comparisons: int
    n_wins: int
    n_ties: int
    method: str
    mode: str


def auc(scored, positives, method: str, mode: str = "exact",
        sample_n: int = 100_000, seed: int | None = None) -> AucResult:
    """Probability that a removed edge outscores a never-edge, ties half.

    ``positives`` are vertex pairs that must all appear in ``scored.pairs``;
    the remaining scored pairs are the negatives. Exact mode evaluates every
    positive-negative comparison (rank-based, identical to the brute force);
    sampled mode draws ``sample_n`` comparisons with replacement.
    """
    scores = scored.scores[method]
    n_graph = scored.graph.n
    pair_enc = scored.pairs[:, 0].astype(np.int64) * n_graph + scored.pairs[:, 1]
    pos_list = _canonical_pairs(positives)
    if len(pos_list) == 0:
        raise ValueError("no positives: nothing was removed among observed vertices")
    pos_enc = np.asarray([u * n_graph + v for u, v in pos_list], dtype=np.int64)
    mask = np.isin(pair_enc, pos_enc)
    if int(mask.sum()) != len(pos_list):
        raise ValueError("positives must be a subset of the scored pairs")
    return auc_from_scores(scores[mask], scores[~mask], method,
                           mode=mode, sample_n=sample_n, seed=seed)


def auc_from_scores(pos_scores: np.ndarray, neg_scores: np.ndarray, method: str,
                    mode: str = "exact", sample_n: int = 100_000,
                    seed: int | None = None) -> AucResult:
    """AUC from already-separated positive and negative score arrays."""
    if pos_scores.size == 0:
        raise ValueError("no positives: nothing was removed among observed vertices")
    if neg_scores.size == 0:
        raise ValueError("no negatives to compare against")
    if mode == "exact":
        neg_sorted = np.sort(neg_scores)
        lo = np.searchsorted(neg_sorted, pos_scores, side="left")
        hi = np.searchsorted(neg_sorted, pos_scores, side="right")
        n_wins = int(lo.sum())
        n_ties = int((hi - lo).sum())
        n_comp = pos_scores.size * neg_scores.size
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        a = pos_scores[rng.integers(pos_scores.size, size=sample_n)]
        b = neg_scores[rng.integers(neg_scores.size, size=sample_n)]
        n_wins = int((a > b).sum())
        n_ties = int((a == b).sum())
        n_comp = sample_n
    else:
        raise ValueError(f"unknown AUC mode {mode!r}")
    value = (n_wins + 0.5 * n_ties) / n_comp
    return AucResult(value, n_comp, n_wins, n_ties, method, mode)


def _canonical_pairs(pairs) -> list[tuple[int, int]]:
    out = set()
    for u, v in pairs:
        u, v = int(u), int(v)
        out.add((u, v) if u < v else (v, u))
    return sorted(out)


def modularity(g: Graph, p: Partition) -> float:
    """Newman modularity: sum over communities of e_c/m - (d_c/2m)^2."""
    m = g.num_edges
    if g.n == 0 or m == 0:
        raise ValueError("modularity is undefined on an empty graph")
    if p.n != g.n:
        raise ValueError("partition does not cover the vertex set")
    a = p.assignment
    e = g.edge_array
    intra = a[e[:, 0]] == a[e[:, 1]]
    e_c = np.bincount(a[e[:, 0]][intra], minlength=p.k)
    d_c = np.bincount(a, weights=g.degrees.astype(np.float64), minlength=p.k)
    return float(np.sum(e_c / m - (d_c / (2.0 * m)) ** 2))


# -- detectors ----------------------------------------------------------------


def louvain(g: Graph, seed: int) -> Partition:
    """Greedy modularity optimization by local moves plus aggregation."""
    part, _ = louvain_history(g, seed)
    return part


def louvain_history(g: Graph, seed: int) -> tuple[Partition, list[float]]:
    """Louvain plus the modularity of the projected partition after each
    aggregation level (non-decreasing)."""
    n = g.n
    if n == 0:
        return Partition.from_labels(np.empty(0, dtype=np.int32)), []
    if g.num_edges == 0:
        return Partition.from_labels(np.arange(n)), []
    rng = np.random.default_rng(seed)

    indptr, indices = g.csr()
    indices = np.ascontiguousarray(indices)
    weights = np.ones(indices.shape[0], dtype=np.float64)
    strength = g.degrees.astype(np.float64)
    two_m = float(strength.sum())
    mapping = np.arange(n, dtype=np.int64)  # original vertex -> current node
    history: list[float] = []

    projected = mapping
    for _level in range(_MAX_LEVELS):
        n_cur = indptr.shape[0] - 1
        labels = np.arange(n_cur, dtype=np.int32)
        comm_tot = strength.copy()
        total_moves = 0
        for _ in range(_MAX_SWEEPS):
            order = rng.permutation(n_cur).astype(np.int32)
            moves = kernels.louvain_sweep(indptr, indices, weights, strength,
                                          labels, comm_tot, order, two_m)
            total_moves += moves
            if moves == 0:
                break
        projected = labels[mapping]
        history.append(modularity(g, Partition.from_labels(projected)))
        if total_moves == 0:
            return Partition.from_labels(projected), history
        # aggregate communities into the next-level weighted graph
        uniq, dense = np.unique(labels, return_inverse=True)
        n_new = uniq.shape[0]
        mapping = dense[mapping].astype(np.int64)
        src = np.repeat(np.arange(n_cur), np.diff(indptr))
        c_src = dense[src]
        c_dst = dense[indices]
        keep = c_src != c_dst  # intra weight travels with node strength
        enc = c_src[keep].astype(np.int64) * n_new + c_dst[keep]
        agg_enc, inv = np.unique(enc, return_inverse=True)
        agg_w = np.bincount(inv, weights=weights[keep], minlength=agg_enc.shape[0])
        new_src = (agg_enc // n_new).astype(np.int64)
        new_dst = (agg_enc % n_new).astype(np.int32)
        new_indptr = np.zeros(n_new + 1, dtype=np.int64)
        np.cumsum(np.bincount(new_src, minlength=n_new), out=new_indptr[1:])
        new_strength = np.bincount(dense, weights=strength, minlength=n_new)
        indptr, indices, weights, strength = (
            new_indptr, np.ascontiguousarray(new_dst),
            np.ascontiguousarray(agg_w, dtype=np.float64), new_strength)
    return Partition.from_labels(projected), history


def label_propagation(g: Graph, seed: int) -> Partition:
    """Asynchronous majority-label propagation, random order per sweep,
    uniform tie-breaks; stops when a sweep changes nothing (100-sweep cap)."""
    n = g.n
    if n == 0:
        return Partition.from_labels(np.empty(0, dtype=np.int32))
    rng = np.random.default_rng(seed)
    indptr, indices = g.csr()
    indices = np.ascontiguousarray(indices)
    labels = np.arange(n, dtype=np.int32)
    for _ in range(_MAX_LP_SWEEPS):
        order = rng.permutation(n).astype(np.int32)
        tie = rng.integers(0, 2**64, size=n, dtype=np.uint64)
        changes = kernels.labelprop_sweep(indptr, indices, labels, order, tie)
        if changes == 0:
            break
    return Partition.from_labels(labels)


def reference_partition(g: Graph, seed: int) -> Partition:
    """Best-modularity partition of Louvain vs label propagation (tie: Louvain)."""
    p_lou = louvain(g, derive_seed(seed, "louvain"))
    p_lab = label_propagation(g, derive_seed(seed, "labelprop"))
    if g.num_edges == 0:
        return p_lou
    return p_lou if modularity(g, p_lou) >= modularity(g, p_lab) else p_lab


# -- partition comparison ------------------------------------------------------


def nmi(p1: Partition, p2: Partition) -> float:
    """Normalized mutual information 2*I/(H1+H2) over the two partitions.

    Identical partitions give exactly 1.0; if both are trivial single
    communities that is also 1.0, while one trivial partition against a
    nontrivial one gives 0.0.
    """
    if p1.n != p2.n:
        raise ValueError("partitions cover different vertex sets")
    if p1 == p2:
        return 1.0
    n = p1.n
    if n == 0:
        return 1.0
    a1 = p1.assignment.astype(np.int64)
    a2 = p2.assignment.astype(np.int64)
    joint = np.bincount(a1 * p2.k + a2, minlength=p1.k * p2.k).reshape(p1.k, p2.k)
    n1 = joint.sum(axis=1)
    n2 = joint.sum(axis=0)
    h1 = -sum(c / n * math.log(c / n) for c in n1.tolist() if c)
    h2 = -sum(c / n * math.log(c / n) for c in n2.tolist() if c)
    if h1 == 0.0 and h2 == 0.0:
        return 1.0
    info = 0.0
    nz = np.nonzero(joint)
    for i, j in zip(*nz):
        nij = int(joint[i, j])
        info += nij / n * math.log(n * nij / (int(n1[i]) * int(n2[j])))
    value = 2.0 * info / (h1 + h2)
    return float(min(max(value, 0.0), 1.0))
