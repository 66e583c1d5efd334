"""Kernel backend selection.

The compiled extension is preferred; the pure-Python twin is the fallback.
Set ``NETGAPS_PURE_PYTHON=1`` to force the fallback (used by the tests that
assert backend equivalence and by ``benchmarks/compare_backends.py``).
"""

import os

if os.environ.get("NETGAPS_PURE_PYTHON", "").lower() in ("1", "true", "yes"):
    from . import _core_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _core_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _core_py as _impl

        BACKEND = "python"

CN = 0
JACCARD = 1
MEETMIN = 2
GEOMETRIC = 3
AA = 4
RA = 5
PA = 6

bfs_distances = _impl.bfs_distances
all_eccentricities = _impl.all_eccentricities
connected_components = _impl.connected_components
bridges = _impl.bridges
triangle_census = _impl.triangle_census
score_pairs = _impl.score_pairs
louvain_sweep = _impl.louvain_sweep
labelprop_sweep = _impl.labelprop_sweep

__all__ = [
    "BACKEND",
    "CN", "JACCARD", "MEETMIN", "GEOMETRIC", "AA", "RA", "PA",
    "bfs_distances", "all_eccentricities", "connected_components",
    "bridges", "triangle_census", "score_pairs",
    "louvain_sweep", "labelprop_sweep",
]
