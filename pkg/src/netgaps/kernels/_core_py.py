"""Pure-Python kernel backend.

Mirrors ``_core_cy`` function by function. Every loop here iterates in the
same order and performs float arithmetic in the same sequence as the compiled
backend, so results are bit-identical whichever one gets imported. All
randomness is decided by callers (visit orders, tie-break draws); kernels are
deterministic pure functions of their inputs.

Graphs arrive as CSR adjacency: ``indptr`` (int64, length n+1) and ``indices``
(int32, neighbor ids sorted ascending within each row), or as flat edge
arrays where noted.
"""

from __future__ import annotations

import math

import numpy as np


def bfs_distances(indptr, indices, source):
    """Unweighted shortest-path distances from ``source``; -1 = unreachable."""
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int32)
    dist[source] = 0
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for idx in range(indptr[u], indptr[u + 1]):
                v = indices[idx]
                if dist[v] < 0:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


def all_eccentricities(indptr, indices):
    """Max finite BFS distance from every vertex (0 for isolated vertices)."""
    n = len(indptr) - 1
    ecc = np.zeros(n, dtype=np.int32)
    for s in range(n):
        dist = bfs_distances(indptr, indices, s)
        ecc[s] = dist.max() if n else 0
    return ecc


def connected_components(indptr, indices):
    """Component label per vertex; labels dense, in order of first vertex seen."""
    n = len(indptr) - 1
    comp = np.full(n, -1, dtype=np.int32)
    label = 0
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = label
        stack = [s]
        while stack:
            u = stack.pop()
            for idx in range(indptr[u], indptr[u + 1]):
                v = indices[idx]
                if comp[v] < 0:
                    comp[v] = label
                    stack.append(v)
        label += 1
    return comp


def bridges(us, vs, n):
    """All bridge edges of the simple graph given as flat edge arrays.

    Returns an (k, 2) int32 array with u < v per row, sorted lexicographically.
    Uses an iterative Tarjan lowpoint DFS; builds its own CSR via counting
    sort so callers can pass raw edge arrays mid-deletion-loop.
    """
    m = len(us)
    deg = np.zeros(n, dtype=np.int64)
    for i in range(m):
        deg[us[i]] += 1
        deg[vs[i]] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    adj = np.empty(2 * m, dtype=np.int32)
    cursor = indptr[:-1].copy()
    for i in range(m):
        u = us[i]
        v = vs[i]
        adj[cursor[u]] = v
        cursor[u] += 1
        adj[cursor[v]] = u
        cursor[v] += 1

    disc = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    out = []
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        # frame: [vertex, parent, next-neighbor slot, parent-edge skipped?]
        stack = [[root, -1, indptr[root], 0]]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            frame = stack[-1]
            u, parent, ptr, skipped = frame
            if ptr < indptr[u + 1]:
                frame[2] = ptr + 1
                w = adj[ptr]
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append([w, u, indptr[w], 0])
                elif w == parent and not skipped:
                    frame[3] = 1  # simple graph: skip the tree edge once
                elif disc[w] < low[u]:
                    low[u] = disc[w]
            else:
                stack.pop()
                if parent >= 0:
                    if low[u] < low[parent]:
                        low[parent] = low[u]
                    if low[u] > disc[parent]:
                        a, b = (parent, u) if parent < u else (u, parent)
                        out.append((a, b))
    if not out:
        return np.empty((0, 2), dtype=np.int32)
    arr = np.array(sorted(out), dtype=np.int32)
    return arr


def triangle_census(indptr, indices):
    """(#triangles, #connected triples). Rows must be sorted ascending."""
    n = len(indptr) - 1
    tri = 0
    triples = 0
    for u in range(n):
        du = indptr[u + 1] - indptr[u]
        triples += du * (du - 1) // 2
        for idx in range(indptr[u], indptr[u + 1]):
            v = indices[idx]
            if v <= u:
                continue
            # count common neighbors w with w > v (each triangle once)
            i = indptr[u]
            j = indptr[v]
            iend = indptr[u + 1]
            jend = indptr[v + 1]
            while i < iend and j < jend:
                a = indices[i]
                b = indices[j]
                if a < b:
                    i += 1
                elif b < a:
                    j += 1
                else:
                    if a > v:
                        tri += 1
                    i += 1
                    j += 1
    return int(tri), int(triples)


# scorer method ids shared by both backends
CN, JACCARD, MEETMIN, GEOMETRIC, AA, RA, PA = range(7)


def score_pairs(indptr, indices, us, vs, method):
    """Proximity scores for vertex pairs under one neighborhood-overlap method.

    Intersections walk sorted adjacency rows in ascending order, so the AA/RA
    float accumulation order is fixed.
    """
    k = len(us)
    out = np.empty(k, dtype=np.float64)
    for p in range(k):
        u = us[p]
        v = vs[p]
        du = indptr[u + 1] - indptr[u]
        dv = indptr[v + 1] - indptr[v]
        if method == PA:
            out[p] = float(du * dv)
            continue
        inter = 0
        acc = 0.0
        i = indptr[u]
        j = indptr[v]
        iend = indptr[u + 1]
        jend = indptr[v + 1]
        while i < iend and j < jend:
            a = indices[i]
            b = indices[j]
            if a < b:
                i += 1
            elif b < a:
                j += 1
            else:
                inter += 1
                if method == AA:
                    ds = indptr[a + 1] - indptr[a]
                    acc += 1.0 / math.log(ds)
                elif method == RA:
                    ds = indptr[a + 1] - indptr[a]
                    acc += 1.0 / ds
                i += 1
                j += 1
        if method == CN:
            out[p] = float(inter)
        elif method == JACCARD:
            denom = du + dv - inter
            out[p] = inter / denom if denom > 0 else 0.0
        elif method == MEETMIN:
            denom = du if du < dv else dv
            out[p] = inter / denom if denom > 0 else 0.0
        elif method == GEOMETRIC:
            denom = du * dv
            out[p] = (inter * inter) / denom if denom > 0 else 0.0
        else:  # AA or RA
            out[p] = acc
    return out


def louvain_sweep(indptr, indices, weights, strength, labels, comm_tot, order, two_m):
    """One local-move sweep over ``order``; returns the number of moves.

    ``strength`` is the weighted degree (self-loops counted twice),
    ``comm_tot`` the per-community strength totals, updated in place. A vertex
    moves to the neighboring community with the largest gain; exact ties go to
    the lowest community id.
    """
    n = len(order)
    acc = {}
    moves = 0
    for t in range(n):
        u = order[t]
        cu = labels[u]
        acc.clear()
        for idx in range(indptr[u], indptr[u + 1]):
            c = labels[indices[idx]]
            acc[c] = acc.get(c, 0.0) + weights[idx]
        ku = strength[u]
        comm_tot[cu] -= ku
        k_in_cu = acc.get(cu, 0.0)
        best_c = cu
        best_gain = k_in_cu - comm_tot[cu] * ku / two_m
        for c, w in acc.items():
            if c == cu:
                continue
            gain = w - comm_tot[c] * ku / two_m
            if gain > best_gain or (gain == best_gain and c < best_c):
                best_gain = gain
                best_c = c
        labels[u] = best_c
        comm_tot[best_c] += ku
        if best_c != cu:
            moves += 1
    return moves


def labelprop_sweep(indptr, indices, labels, order, tie_rand):
    """One asynchronous majority-label sweep; returns the number of changes.

    Ties are broken by ``tie_rand[u] % n_tied`` over the tied labels in
    ascending order; a vertex whose current label is already among the
    majority labels keeps it.
    """
    n = len(order)
    changes = 0
    counts = {}
    for t in range(n):
        u = order[t]
        if indptr[u + 1] == indptr[u]:
            continue
        counts.clear()
        for idx in range(indptr[u], indptr[u + 1]):
            lab = labels[indices[idx]]
            counts[lab] = counts.get(lab, 0) + 1
        best = max(counts.values())
        tied = sorted(lab for lab, c in counts.items() if c == best)
        cur = labels[u]
        if cur in counts and counts[cur] == best:
            continue
        pick = tied[int(tie_rand[u] % np.uint64(len(tied)))]
        labels[u] = pick
        changes += 1
    return changes
