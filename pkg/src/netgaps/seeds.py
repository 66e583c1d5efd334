"""Deterministic seed splitting for replica and sub-task RNG streams.

A child seed is the first 8 bytes of SHA-256 over the master seed and the
component path, so adding replicas or models never perturbs the seeds of
existing ones.
"""

from __future__ import annotations

import hashlib


def derive_seed(master: int, *parts) -> int:
    """Derive a 64-bit child seed from ``master`` and a component path.

    Parts may be ints, floats or strings; floats are keyed by their shortest
    round-trip repr.
    """
    h = hashlib.sha256()
    h.update(repr(int(master)).encode())
    for p in parts:
        h.update(b"|")
        h.update(repr(p).encode())
    return int.from_bytes(h.digest()[:8], "little")
