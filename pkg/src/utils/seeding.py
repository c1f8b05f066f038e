"""
Seed derivation.

Every random draw of a run comes from one root seed; components get their own
stream through derive_seed so adding a consumer never shifts another's draws.
"""

import hashlib
import random


def derive_seed(seed: int, name: str) -> int:
    """Stable 63-bit seed for a named component."""
    digest = hashlib.sha256(f"{seed}:{name}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def component_rng(seed: int, name: str) -> random.Random:
    return random.Random(derive_seed(seed, name))
