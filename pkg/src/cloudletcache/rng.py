"""Labeled deterministic RNG streams derived from a single master seed.

Each (seed, label) pair yields an independent generator, so adding a new
stream (e.g. one more client) never perturbs the draws of existing ones.
"""
from __future__ import annotations

import hashlib
import random


def stream(master_seed: int, label: str) -> random.Random:
    """Return a generator seeded from sha256(master_seed ':' label)."""
    digest = hashlib.sha256(f"{master_seed}:{label}".encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))
