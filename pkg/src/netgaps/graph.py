"""Immutable undirected simple graph, edge-list I/O, and structural primitives.

Vertices are dense internal ids 0..n-1; original file labels (arbitrary
whitespace-free strings) are kept in a side table. All heavier traversals
delegate to :mod:`netgaps.kernels`.
"""

from __future__ import annotations

import logging
from typing import Iterable, Sequence

import numpy as np

from . import kernels

logger = logging.getLogger(__name__)

#: distance value reported by :func:`bfs_distances` for unreachable vertices
UNREACHABLE = -1


class EdgeListParseError(ValueError):
    """Raised when an edge-list file line cannot be parsed."""


class Graph:
    """Undirected simple graph, immutable after construction.

    Safe to share read-only between parallel workers. Use
    :meth:`from_edges` unless you already hold a canonical edge array.
    """

    __slots__ = ("_n", "_edges", "_labels", "_adj", "_csr", "_degrees")

    def __init__(self, n: int, edges: np.ndarray, labels: tuple[str, ...] | None = None):
        # edges must already be canonical: u < v per row, rows lexsorted
        self._n = int(n)
        self._edges = edges
        self._edges.setflags(write=False)
        self._labels = labels
        self._adj: list[frozenset[int]] | None = None
        self._csr: tuple[np.ndarray, np.ndarray] | None = None
        self._degrees: np.ndarray | None = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] | np.ndarray,
        labels: Sequence[str] | None = None,
    ) -> "Graph":
        """Build a graph from an iterable of vertex pairs.

        Rejects self-loops, duplicate edges and out-of-range ids; callers that
        need lenient parsing should go through :func:`load_edge_list`.
        """
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int32)
        if arr.size == 0:
            arr = np.empty((0, 2), dtype=np.int32)
        arr = arr.reshape(-1, 2)
        if arr.size:
            if arr.min() < 0 or arr.max() >= n:
                raise ValueError(f"edge endpoint out of range 0..{n - 1}")
            if (arr[:, 0] == arr[:, 1]).any():
                raise ValueError("self-loop in edge list")
            lo = np.minimum(arr[:, 0], arr[:, 1])
            hi = np.maximum(arr[:, 0], arr[:, 1])
            arr = np.stack([lo, hi], axis=1)
            order = np.lexsort((arr[:, 1], arr[:, 0]))
            arr = np.ascontiguousarray(arr[order])
            dup = (np.diff(arr[:, 0]) == 0) & (np.diff(arr[:, 1]) == 0)
            if dup.any():
                raise ValueError("duplicate edge in edge list")
        if labels is not None:
            if len(labels) != n:
                raise ValueError("labels length must equal vertex count")
            labels = tuple(labels)
        return cls(n, arr, labels)

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def num_edges(self) -> int:
        return self._edges.shape[0]

    @property
    def edge_array(self) -> np.ndarray:
        """(m, 2) int32 array, u < v per row, lexicographically sorted."""
        return self._edges

    @property
    def labels(self) -> tuple[str, ...]:
        if self._labels is None:
            return tuple(str(v) for v in range(self._n))
        return self._labels

    def label_of(self, v: int) -> str:
        return str(v) if self._labels is None else self._labels[v]

    @property
    def degrees(self) -> np.ndarray:
        if self._degrees is None:
            d = np.bincount(self._edges.ravel(), minlength=self._n).astype(np.int64)
            d.setflags(write=False)
            self._degrees = d
        return self._degrees

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adjacency()[v]

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return v in self._adjacency()[u]

    def edges(self) -> Iterable[tuple[int, int]]:
        for u, v in self._edges:
            yield int(u), int(v)

    def _adjacency(self) -> list[frozenset[int]]:
        if self._adj is None:
            sets: list[set[int]] = [set() for _ in range(self._n)]
            for u, v in self._edges:
                sets[u].add(int(v))
                sets[v].add(int(u))
            self._adj = [frozenset(s) for s in sets]
        return self._adj

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr int64, indices int32) with neighbor ids sorted per row."""
        if self._csr is None:
            m = self.num_edges
            src = np.concatenate([self._edges[:, 0], self._edges[:, 1]])
            dst = np.concatenate([self._edges[:, 1], self._edges[:, 0]])
            order = np.lexsort((dst, src))
            indices = np.ascontiguousarray(dst[order], dtype=np.int32)
            counts = np.bincount(src, minlength=self._n)
            indptr = np.zeros(self._n + 1, dtype=np.int64)
            np.cumsum(counts, out=indptr[1:])
            indices.setflags(write=False)
            indptr.setflags(write=False)
            self._csr = (indptr, indices)
            assert indices.shape[0] == 2 * m
        return self._csr

    def structurally_equal(self, other: "Graph") -> bool:
        """Same vertex count and same internal-id edge set (labels ignored)."""
        return (self._n == other._n
                and self._edges.shape == other._edges.shape
                and bool((self._edges == other._edges).all()))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.num_edges})"


# -- I/O --------------------------------------------------------------------


def load_edge_list(path, comment_prefix: str = "#") -> Graph:
    """Parse a whitespace-separated edge-list file into a :class:`Graph`.

    One edge per line, two labels per line (extra tokens ignored), lines
    starting with the comment prefix skipped. Self-loops and repeated edges
    are dropped; their counts are logged as a warning. Labels become internal
    ids in first-seen order.
    """
    label_to_id: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    n_self = 0
    n_dup = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if line.startswith(comment_prefix):
                continue
            tokens = line.split()
            if len(tokens) < 2:
                raise EdgeListParseError(
                    f"{path}: line {lineno}: expected 2 tokens, found {len(tokens)}")
            a, b = tokens[0], tokens[1]
            u = label_to_id.setdefault(a, len(label_to_id))
            v = label_to_id.setdefault(b, len(label_to_id))
            if u == v:
                n_self += 1
                continue
            e = (u, v) if u < v else (v, u)
            if e in edges:
                n_dup += 1
            else:
                edges.add(e)
    if n_self or n_dup:
        logger.warning("%s: dropped %d self-loop(s) and %d duplicate edge(s)",
                       path, n_self, n_dup)
    labels = tuple(sorted(label_to_id, key=label_to_id.get))
    return Graph.from_edges(len(labels), sorted(edges), labels=labels)


def save_edge_list(g: Graph, path) -> None:
    """Write one label pair per line, each pair and the lines sorted
    lexicographically; newline-terminated. load(save(g)) is structurally g."""
    lines = []
    for u, v in g.edges():
        a, b = g.label_of(u), g.label_of(v)
        if b < a:
            a, b = b, a
        lines.append(f"{a} {b}\n")
    lines.sort()
    with open(path, "w", encoding="utf-8") as fh:
        fh.writelines(lines)


# -- structural primitives ----------------------------------------------------


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Unweighted shortest-path distance from ``source`` to every vertex;
    :data:`UNREACHABLE` for vertices in other components."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range")
    indptr, indices = g.csr()
    return kernels.bfs_distances(indptr, indices, int(source))


def connected_components(g: Graph) -> np.ndarray:
    """Component id per vertex (dense, first-seen order)."""
    indptr, indices = g.csr()
    return kernels.connected_components(indptr, indices)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return int(connected_components(g).max()) == 0


def min_eccentricity_vertices(g: Graph) -> list[int]:
    """Vertices with the smallest maximum distance to every other vertex.

    On a disconnected graph the search is restricted to the largest component
    (ties broken by smallest component id).
    """
    if g.n == 0:
        raise ValueError("empty graph has no center")
    comp = connected_components(g)
    sizes = np.bincount(comp)
    target = int(np.argmax(sizes))  # argmax takes the first max: smallest id
    members = np.flatnonzero(comp == target)
    indptr, indices = g.csr()
    ecc = kernels.all_eccentricities(indptr, indices)
    ecc_members = ecc[members]
    best = ecc_members.min()
    return [int(v) for v in members[ecc_members == best]]


def would_disconnect(g: Graph, edge: tuple[int, int]) -> bool:
    """True iff removing ``edge`` increases the component count (bridge test)."""
    u, v = edge
    if not g.has_edge(u, v):
        raise ValueError(f"edge {edge!r} not in graph")
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if (x == u and y == v) or (x == v and y == u):
                continue
            if y not in seen:
                if y == v:
                    return False
                seen.add(y)
                stack.append(y)
    return True


def transitivity(g: Graph) -> float:
    """Global clustering: 3 * triangles / connected triples; 0 if no triples."""
    indptr, indices = g.csr()
    tri, triples = kernels.triangle_census(indptr, indices)
    if triples == 0:
        return 0.0
    return 3.0 * tri / triples


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, np.ndarray]:
    """Subgraph on ``vertices`` with every original edge among them.

    Returns (subgraph, vertex_map) where vertex_map[i] is the original id of
    subgraph vertex i (ascending original order).
    """
    vs = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if vs.size and (vs.min() < 0 or vs.max() >= g.n):
        raise ValueError("vertex outside graph")
    keep = np.zeros(g.n, dtype=bool)
    keep[vs] = True
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[vs] = np.arange(vs.size)
    e = g.edge_array
    if e.size:
        mask = keep[e[:, 0]] & keep[e[:, 1]]
        sub_edges = remap[e[mask]]
    else:
        sub_edges = np.empty((0, 2), dtype=np.int64)
    labels = tuple(g.label_of(int(v)) for v in vs)
    sub = Graph.from_edges(vs.size, sub_edges, labels=labels)
    return sub, vs
