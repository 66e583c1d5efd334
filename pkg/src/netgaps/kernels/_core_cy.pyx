# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel backend; see ``_core_py`` for the reference semantics.

Loops iterate in the same order and do float arithmetic in the same sequence
as the pure-Python twin, so both backends return bit-identical results.
"""

from libc.math cimport log

import numpy as np

cimport numpy as cnp

cnp.import_array()


def bfs_distances(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices, int source):
    cdef int n = indptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0, idx
    cdef int u, v
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for idx in range(indptr[u], indptr[u + 1]):
            v = indices[idx]
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue[tail] = v
                tail += 1
    return dist_arr


def all_eccentricities(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices):
    cdef int n = indptr.shape[0] - 1
    ecc_arr = np.zeros(n, dtype=np.int32)
    cdef cnp.int32_t[::1] ecc = ecc_arr
    dist_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef Py_ssize_t head, tail, idx
    cdef int s, u, v, best
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        best = 0
        while head < tail:
            u = queue[head]
            head += 1
            if dist[u] > best:
                best = dist[u]
            for idx in range(indptr[u], indptr[u + 1]):
                v = indices[idx]
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue[tail] = v
                    tail += 1
        ecc[s] = best
    return ecc_arr


def connected_components(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices):
    cdef int n = indptr.shape[0] - 1
    comp_arr = np.full(n, -1, dtype=np.int32)
    cdef cnp.int32_t[::1] comp = comp_arr
    stack_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] stack = stack_arr
    cdef Py_ssize_t top, idx
    cdef int s, u, v, label = 0
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = label
        stack[0] = s
        top = 1
        while top > 0:
            top -= 1
            u = stack[top]
            for idx in range(indptr[u], indptr[u + 1]):
                v = indices[idx]
                if comp[v] < 0:
                    comp[v] = label
                    stack[top] = v
                    top += 1
        label += 1
    return comp_arr


def bridges(const cnp.int32_t[::1] us, const cnp.int32_t[::1] vs, int n):
    cdef Py_ssize_t m = us.shape[0]
    cdef Py_ssize_t i
    cdef int u, v, w, root

    indptr_arr = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] indptr = indptr_arr
    for i in range(m):
        indptr[us[i] + 1] += 1
        indptr[vs[i] + 1] += 1
    for i in range(n):
        indptr[i + 1] += indptr[i]
    adj_arr = np.empty(2 * m, dtype=np.int32)
    cdef cnp.int32_t[::1] adj = adj_arr
    cursor_arr = np.asarray(indptr_arr[:n]).copy()
    cdef cnp.int64_t[::1] cursor = cursor_arr
    for i in range(m):
        u = us[i]
        v = vs[i]
        adj[cursor[u]] = v
        cursor[u] += 1
        adj[cursor[v]] = u
        cursor[v] += 1

    disc_arr = np.full(n, -1, dtype=np.int64)
    low_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] disc = disc_arr
    cdef cnp.int64_t[::1] low = low_arr
    # explicit DFS stack: vertex, parent, next adjacency slot, skip flag
    sv_arr = np.empty(n, dtype=np.int32)
    sp_arr = np.empty(n, dtype=np.int32)
    sptr_arr = np.empty(n, dtype=np.int64)
    sskip_arr = np.empty(n, dtype=np.int8)
    cdef cnp.int32_t[::1] sv = sv_arr
    cdef cnp.int32_t[::1] sp = sp_arr
    cdef cnp.int64_t[::1] sptr = sptr_arr
    cdef cnp.int8_t[::1] sskip = sskip_arr
    cdef Py_ssize_t top
    cdef cnp.int64_t timer = 0, ptr
    cdef int parent
    out = []
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = timer
        low[root] = timer
        timer += 1
        sv[0] = root
        sp[0] = -1
        sptr[0] = indptr[root]
        sskip[0] = 0
        top = 1
        while top > 0:
            u = sv[top - 1]
            parent = sp[top - 1]
            ptr = sptr[top - 1]
            if ptr < indptr[u + 1]:
                sptr[top - 1] = ptr + 1
                w = adj[ptr]
                if disc[w] < 0:
                    disc[w] = timer
                    low[w] = timer
                    timer += 1
                    sv[top] = w
                    sp[top] = u
                    sptr[top] = indptr[w]
                    sskip[top] = 0
                    top += 1
                elif w == parent and sskip[top - 1] == 0:
                    sskip[top - 1] = 1  # simple graph: skip the tree edge once
                elif disc[w] < low[u]:
                    low[u] = disc[w]
            else:
                top -= 1
                if parent >= 0:
                    if low[u] < low[parent]:
                        low[parent] = low[u]
                    if low[u] > disc[parent]:
                        if parent < u:
                            out.append((parent, u))
                        else:
                            out.append((u, parent))
    if not out:
        return np.empty((0, 2), dtype=np.int32)
    return np.array(sorted(out), dtype=np.int32)


def triangle_census(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices):
    cdef int n = indptr.shape[0] - 1
    cdef cnp.int64_t tri = 0, triples = 0, du
    cdef Py_ssize_t idx, i, j, iend, jend
    cdef int u, v, a, b
    for u in range(n):
        du = indptr[u + 1] - indptr[u]
        triples += du * (du - 1) // 2
        for idx in range(indptr[u], indptr[u + 1]):
            v = indices[idx]
            if v <= u:
                continue
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


CN = 0
JACCARD = 1
MEETMIN = 2
GEOMETRIC = 3
AA = 4
RA = 5
PA = 6


def score_pairs(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices,
                const cnp.int32_t[::1] us, const cnp.int32_t[::1] vs, int method):
    cdef Py_ssize_t k = us.shape[0]
    out_arr = np.empty(k, dtype=np.float64)
    cdef cnp.float64_t[::1] out = out_arr
    cdef Py_ssize_t p, i, j, iend, jend
    cdef int u, v, a, b
    cdef cnp.int64_t du, dv, ds, inter, denom
    cdef double acc
    for p in range(k):
        u = us[p]
        v = vs[p]
        du = indptr[u + 1] - indptr[u]
        dv = indptr[v + 1] - indptr[v]
        if method == PA:
            out[p] = <double>(du * dv)
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
                    acc += 1.0 / log(<double>ds)
                elif method == RA:
                    ds = indptr[a + 1] - indptr[a]
                    acc += 1.0 / <double>ds
                i += 1
                j += 1
        if method == CN:
            out[p] = <double>inter
        elif method == JACCARD:
            denom = du + dv - inter
            out[p] = (<double>inter) / (<double>denom) if denom > 0 else 0.0
        elif method == MEETMIN:
            denom = du if du < dv else dv
            out[p] = (<double>inter) / (<double>denom) if denom > 0 else 0.0
        elif method == GEOMETRIC:
            denom = du * dv
            out[p] = (<double>(inter * inter)) / (<double>denom) if denom > 0 else 0.0
        else:
            out[p] = acc
    return out_arr


def louvain_sweep(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices,
                  const cnp.float64_t[::1] weights, const cnp.float64_t[::1] strength,
                  cnp.int32_t[::1] labels, cnp.float64_t[::1] comm_tot,
                  const cnp.int32_t[::1] order, double two_m):
    cdef int n = order.shape[0]
    cdef int n_all = indptr.shape[0] - 1
    acc_arr = np.zeros(n_all, dtype=np.float64)
    touched_arr = np.empty(n_all, dtype=np.int32)
    seen_arr = np.zeros(n_all, dtype=np.int8)
    cdef cnp.float64_t[::1] acc = acc_arr
    cdef cnp.int32_t[::1] touched = touched_arr
    cdef cnp.int8_t[::1] seen = seen_arr
    cdef Py_ssize_t t, idx, nt, q
    cdef int u, cu, c, best_c, moves = 0
    cdef double ku, k_in_cu, best_gain, gain, w
    for t in range(n):
        u = order[t]
        cu = labels[u]
        nt = 0
        for idx in range(indptr[u], indptr[u + 1]):
            c = labels[indices[idx]]
            if not seen[c]:
                seen[c] = 1
                touched[nt] = c
                nt += 1
                acc[c] = weights[idx]
            else:
                acc[c] = acc[c] + weights[idx]
        ku = strength[u]
        comm_tot[cu] -= ku
        k_in_cu = acc[cu] if seen[cu] else 0.0
        best_c = cu
        best_gain = k_in_cu - comm_tot[cu] * ku / two_m
        for q in range(nt):
            c = touched[q]
            if c == cu:
                continue
            w = acc[c]
            gain = w - comm_tot[c] * ku / two_m
            if gain > best_gain or (gain == best_gain and c < best_c):
                best_gain = gain
                best_c = c
        labels[u] = best_c
        comm_tot[best_c] += ku
        if best_c != cu:
            moves += 1
        for q in range(nt):
            seen[touched[q]] = 0
    return moves


def labelprop_sweep(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices,
                    cnp.int32_t[::1] labels, const cnp.int32_t[::1] order,
                    const cnp.uint64_t[::1] tie_rand):
    cdef int n = order.shape[0]
    cdef int n_all = indptr.shape[0] - 1
    counts_arr = np.zeros(n_all, dtype=np.int64)
    touched_arr = np.empty(n_all, dtype=np.int32)
    cdef cnp.int64_t[::1] counts = counts_arr
    cdef cnp.int32_t[::1] touched = touched_arr
    cdef Py_ssize_t t, idx, nt, q, n_tied
    cdef int u, lab, cur, pick
    cdef cnp.int64_t best
    cdef int changes = 0
    tied_arr = np.empty(n_all, dtype=np.int32)
    cdef cnp.int32_t[::1] tied = tied_arr
    for t in range(n):
        u = order[t]
        if indptr[u + 1] == indptr[u]:
            continue
        nt = 0
        for idx in range(indptr[u], indptr[u + 1]):
            lab = labels[indices[idx]]
            if counts[lab] == 0:
                touched[nt] = lab
                nt += 1
            counts[lab] += 1
        best = 0
        for q in range(nt):
            if counts[touched[q]] > best:
                best = counts[touched[q]]
        cur = labels[u]
        if counts[cur] == best:  # current label among the majority: keep
            for q in range(nt):
                counts[touched[q]] = 0
            continue
        n_tied = 0
        for q in range(nt):
            if counts[touched[q]] == best:
                tied[n_tied] = touched[q]
                n_tied += 1
        # ascending label order, matching the reference backend
        tied_view = np.asarray(tied_arr[:n_tied])
        tied_view.sort()
        pick = tied[tie_rand[u] % <cnp.uint64_t>n_tied]
        labels[u] = pick
        changes += 1
        for q in range(nt):
            counts[touched[q]] = 0
    return changes
