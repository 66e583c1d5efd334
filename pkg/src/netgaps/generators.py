"""Synthetic network generators: fixed-edge-count uniform random graphs and
planted-community benchmarks with truncated power-law degrees and community
sizes.

The planted generator is a configuration-style construction: sample a degree
sequence, sample community sizes, split each vertex's degree into internal
and external stubs by the mixing fraction, wire stubs by random matching, and
repair self-loops / duplicates / same-community external pairs by pair swaps.
Distributional targets (mean degree, realized mixing) are approximate by
design; determinism per seed is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .community import Partition
from .graph import Graph

_MAX_ATTEMPTS = 100
_REPAIR_SWEEPS = 200


class GenerationError(RuntimeError):
    """Raised when parameters are infeasible after bounded retries."""


@dataclass(frozen=True)
class ErParams:
    n: int
    mean_degree: float
    seed: int


@dataclass(frozen=True)
class LfrParams:
    n: int
    mean_degree: float
    max_degree: int
    degree_exponent: float
    community_exponent: float
    mixing: float
    c_min: int
    c_max: int
    seed: int


@dataclass(frozen=True)
class PlantedGraph:
    graph: Graph
    communities: Partition


def generate_er(p: ErParams) -> Graph:
    """Uniform random graph with exactly round(n * mean_degree / 2) edges.

    Fixed edge count (not per-edge probability) so that observed-edge
    fractions downstream are exact.
    """
    if p.n < 1:
        raise GenerationError("n must be positive")
    if p.mean_degree <= 0:
        raise GenerationError("mean_degree must be positive")
    m = int(round(p.n * p.mean_degree / 2.0))
    total = p.n * (p.n - 1) // 2
    if m > total:
        raise GenerationError(
            f"requested {m} edges exceeds the {total} possible on {p.n} vertices")
    rng = np.random.default_rng(p.seed)
    chosen = rng.choice(total, size=m, replace=False)
    return Graph.from_edges(p.n, _decode_pair_index(chosen, p.n))


def _decode_pair_index(idx: np.ndarray, n: int) -> np.ndarray:
    """Map flat indices over the strict upper triangle to (u, v) pairs."""
    row_counts = np.arange(n - 1, 0, -1, dtype=np.int64)
    starts = np.zeros(n, dtype=np.int64)
    np.cumsum(row_counts, out=starts[1:])
    u = np.searchsorted(starts, idx, side="right") - 1
    v = idx - starts[u] + u + 1
    return np.stack([u, v], axis=1)


def generate_lfr(p: LfrParams) -> PlantedGraph:
    """Planted-community benchmark graph with ground-truth partition."""
    _validate_lfr(p)
    rng = np.random.default_rng(p.seed)
    last_err = None
    for _ in range(_MAX_ATTEMPTS):
        try:
            return _build_lfr(p, rng)
        except _RetryableInfeasible as exc:
            last_err = exc
    raise GenerationError(
        f"gave up after {_MAX_ATTEMPTS} attempts: {last_err}")


def intercommunity_fraction(pg: PlantedGraph) -> float:
    """Fraction of edges whose endpoints lie in different communities."""
    e = pg.graph.edge_array
    if e.shape[0] == 0:
        return 0.0
    a = pg.communities.assignment
    return float((a[e[:, 0]] != a[e[:, 1]]).mean())


# -- internals ----------------------------------------------------------------


class _RetryableInfeasible(Exception):
    pass


def _validate_lfr(p: LfrParams) -> None:
    if not (0 < p.c_min <= p.c_max <= p.n):
        raise GenerationError("need 0 < c_min <= c_max <= n")
    if p.max_degree > p.n - 1:
        raise GenerationError("max_degree exceeds n - 1")
    if not 0.0 <= p.mixing <= 1.0:
        raise GenerationError("mixing must lie in [0, 1]")
    if p.degree_exponent <= 1.0:
        raise GenerationError("degree_exponent must exceed 1")
    if p.community_exponent < 1.0:
        raise GenerationError("community_exponent must be at least 1")
    if p.mean_degree > p.max_degree:
        raise GenerationError("mean_degree cannot exceed max_degree")
    # a community composition summing exactly to n must exist
    if (p.n + p.c_max - 1) // p.c_max > p.n // p.c_min:
        raise GenerationError(
            f"no community-size composition of n={p.n} with sizes in "
            f"[{p.c_min}, {p.c_max}]")


def _power_cdf(x: float, a: float, b: float, tau: float) -> float:
    if abs(tau - 1.0) < 1e-12:
        return float(np.log(x / a) / np.log(b / a))
    e = 1.0 - tau
    return float((x**e - a**e) / (b**e - a**e))


def _rounded_power_mean(a: float, b: float, tau: float) -> float:
    """Expected value of round(X) for X truncated power-law on [a, b].

    The degree sampler rounds its continuous draws, so the cutoff must be
    solved against this, not the continuous mean."""
    k_lo = int(np.floor(a + 0.5))
    k_hi = int(np.floor(b + 0.5))
    total = 0.0
    for k in range(k_lo, k_hi + 1):
        lo = max(k - 0.5, a)
        hi = min(k + 0.5, b)
        if hi <= lo:
            continue
        total += k * (_power_cdf(hi, a, b, tau) - _power_cdf(lo, a, b, tau))
    return total


def _solve_k_min(mean: float, k_max: int, tau: float) -> float:
    lo, hi = 1.0, float(k_max)
    if _rounded_power_mean(lo, k_max, tau) > mean:
        raise GenerationError(
            f"mean_degree {mean} is below the minimum achievable with "
            f"degree_exponent {tau} and max_degree {k_max}")
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if _rounded_power_mean(mid, k_max, tau) < mean:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _sample_power(rng, a: float, b: float, tau: float, size: int) -> np.ndarray:
    u = rng.random(size)
    if abs(tau - 1.0) < 1e-12:
        return a * (b / a) ** u
    e = 1.0 - tau
    return (a**e + u * (b**e - a**e)) ** (1.0 / e)


def _sample_degrees(p: LfrParams, rng) -> np.ndarray:
    """Power-law degree sequence with the cutoff solved for the target mean.

    Sequences whose sample mean drifts more than 5% off target are redrawn
    (bounded; the closest draw wins if none qualifies)."""
    k_min = _solve_k_min(p.mean_degree, p.max_degree, p.degree_exponent)
    best = None
    best_err = np.inf
    for _ in range(100):
        deg = np.rint(_sample_power(rng, k_min, p.max_degree,
                                    p.degree_exponent, p.n)).astype(np.int64)
        np.clip(deg, 1, p.max_degree, out=deg)
        err = abs(float(deg.mean()) - p.mean_degree)
        if err < best_err:
            best, best_err = deg, err
        if err <= 0.05 * p.mean_degree:
            break
    deg = best
    if deg.sum() % 2:
        bump = int(np.argmin(deg))  # smallest degree, lowest id on ties
        deg[bump] += 1
    return deg


def _sample_community_sizes(p: LfrParams, rng) -> list[int]:
    sizes: list[int] = []
    total = 0
    while total < p.n:
        s = int(np.rint(_sample_power(rng, p.c_min, p.c_max,
                                      p.community_exponent, 1)[0]))
        s = min(max(s, p.c_min), p.c_max)
        sizes.append(s)
        total += s
    while total > p.n:
        grown = [i for i, s in enumerate(sizes) if s > p.c_min]
        if grown:
            i = max(grown, key=lambda j: sizes[j])
            sizes[i] -= 1
            total -= 1
        else:
            if len(sizes) <= 1:
                raise _RetryableInfeasible("community sizes cannot sum to n")
            total -= sizes.pop()
    while total < p.n:
        shrunk = [i for i, s in enumerate(sizes) if s < p.c_max]
        if not shrunk:
            raise _RetryableInfeasible("community sizes cannot sum to n")
        i = min(shrunk, key=lambda j: sizes[j])
        sizes[i] += 1
        total += 1
    return sizes


def _internal_degrees(deg: np.ndarray, mixing: float) -> np.ndarray:
    """round((1 - mu) * deg) in total, residue spread by largest remainder."""
    x = (1.0 - mixing) * deg
    base = np.floor(x).astype(np.int64)
    want = int(round(float(x.sum())))
    short = want - int(base.sum())
    if short > 0:
        frac = x - base
        order = np.lexsort((np.arange(deg.shape[0]), -frac))
        base[order[:short]] += 1
    return np.minimum(base, deg)


def _build_lfr(p: LfrParams, rng) -> PlantedGraph:
    deg = _sample_degrees(p, rng)
    sizes = _sample_community_sizes(p, rng)
    internal = _internal_degrees(deg, p.mixing)
    if int(internal.max()) > p.c_max - 1:
        raise GenerationError(
            f"internal degree {int(internal.max())} cannot fit in any community "
            f"of size <= {p.c_max}")

    # place high-internal-degree vertices first; a community must have a free
    # slot and be large enough to host the vertex's internal stubs
    n_comm = len(sizes)
    free = list(sizes)
    members: list[list[int]] = [[] for _ in range(n_comm)]
    comm_of = np.full(p.n, -1, dtype=np.int32)
    order = np.lexsort((np.arange(p.n), -internal))
    for v in order.tolist():
        ok = [c for c in range(n_comm) if free[c] > 0 and sizes[c] - 1 >= internal[v]]
        if not ok:
            raise _RetryableInfeasible(
                f"no community with a free slot can host internal degree {int(internal[v])}")
        c = ok[int(rng.integers(len(ok)))]
        members[c].append(v)
        free[c] -= 1
        comm_of[v] = c

    # per-community stub parity: demote one internal stub to external
    for c in range(n_comm):
        ms = members[c]
        if int(internal[ms].sum()) % 2:
            j = ms[int(np.argmax(internal[ms]))]
            internal[j] -= 1

    edges: set[tuple[int, int]] = set()
    dropped = 0
    for c in range(n_comm):
        ms = np.array(members[c], dtype=np.int64)
        stubs = np.repeat(ms, internal[ms])
        dropped += _wire_stubs(rng, stubs, edges, comm_of, require_cross=False)

    external = deg - internal
    stubs = np.repeat(np.arange(p.n, dtype=np.int64), external)
    dropped += _wire_stubs(rng, stubs, edges, comm_of, require_cross=True)

    if edges and dropped > 0.02 * len(edges):
        raise _RetryableInfeasible(
            f"stub repair dropped {dropped} of {len(edges) + dropped} pairs")
    graph = Graph.from_edges(p.n, sorted(edges))
    return PlantedGraph(graph, Partition.from_labels(comm_of))


def _wire_stubs(rng, stubs: np.ndarray, edges: set, comm_of: np.ndarray,
                require_cross: bool) -> int:
    """Random stub matching into ``edges``; swap-repairs bad pairs in place.

    A pair is bad if it is a self-loop, duplicates an existing edge, or (for
    external wiring) stays inside one community. Returns the number of pairs
    dropped after the repair budget runs out.
    """
    if stubs.size == 0:
        return 0
    stubs = stubs.copy()
    rng.shuffle(stubs)
    pairs = stubs.reshape(-1, 2)
    n_pairs = pairs.shape[0]

    def bad(u, v):
        if u == v:
            return True
        if require_cross and comm_of[u] == comm_of[v]:
            return True
        return (min(u, v), max(u, v)) in pending or (min(u, v), max(u, v)) in edges

    pending: set[tuple[int, int]] = set()
    bad_idx: list[int] = []
    for i in range(n_pairs):
        u, v = int(pairs[i, 0]), int(pairs[i, 1])
        if bad(u, v):
            bad_idx.append(i)
        else:
            pending.add((min(u, v), max(u, v)))

    for _ in range(_REPAIR_SWEEPS):
        if not bad_idx:
            break
        still: list[int] = []
        for i in bad_idx:
            u, v = int(pairs[i, 0]), int(pairs[i, 1])
            j = int(rng.integers(n_pairs))
            c, d = int(pairs[j, 0]), int(pairs[j, 1])
            ok_partner = (min(c, d), max(c, d)) in pending
            if ok_partner:
                pending.discard((min(c, d), max(c, d)))
            if ok_partner and not bad(u, d) and not bad(c, v) \
                    and (min(u, d), max(u, d)) != (min(c, v), max(c, v)):
                pairs[i, 1], pairs[j, 1] = d, v
                pending.add((min(u, d), max(u, d)))
                pending.add((min(c, v), max(c, v)))
            else:
                if ok_partner:
                    pending.add((min(c, d), max(c, d)))
                still.append(i)
        bad_idx = still

    edges.update(pending)
    return len(bad_idx)
