"""Deterministic seed derivation.

Sub-seeds are hashes of (master seed, index), so trials can run in any
order or split across processes and still reproduce bit-identically.
"""

from __future__ import annotations

import hashlib


def derive_seed(master_seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{master_seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")
