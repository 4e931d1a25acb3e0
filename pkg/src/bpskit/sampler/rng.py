"""Per-chain random streams derived from one master seed.

Chain c draws from a Philox counter-based generator keyed by the seed
sequence (master_seed, spawn_key=(c,)), so chains are independent and any
chain can be regenerated without running the others.
"""

from __future__ import annotations

import numpy as np

U64_MAX = 2**64 - 1


def chain_seed_sequence(master_seed: int, chain: int) -> np.random.SeedSequence:
    """Seed sequence of one chain."""
    return np.random.SeedSequence(entropy=master_seed, spawn_key=(chain,))


def chain_generator(master_seed: int, chain: int = 0) -> np.random.Generator:
    """Generator for chain `chain` of a run seeded with `master_seed`."""
    return np.random.Generator(np.random.Philox(chain_seed_sequence(master_seed, chain)))


def derived_seed(master_seed: int, chain: int) -> int:
    """64-bit fingerprint of a chain's stream, recorded in run manifests."""
    return int(chain_seed_sequence(master_seed, chain).generate_state(1, dtype=np.uint64)[0])
