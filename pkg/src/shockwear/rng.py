"""Reproducible random streams.

Every replication owns private generators derived from
(master_seed, replication_index) through SeedSequence spawn keys, so a
replication's randomness never depends on scheduling, batching or thread
count. Stream 0 drives the continuous path (wear increments, arrival
uniforms), stream 1 the per-shock marks (magnitude, jump size). Keeping
marks on their own stream pins the j-th shock of a replication to the same
magnitude and jump across model variants run with the same master seed,
which is what makes paired-seed comparisons monotone.
"""

from __future__ import annotations

from numpy.random import PCG64, Generator, SeedSequence

PATH_STREAM = 0
MARK_STREAM = 1


def replication_stream(master_seed: int, rep_index: int, stream: int) -> Generator:
    """Generator for one replication's stream; deterministic in all arguments."""
    if master_seed < 0 or rep_index < 0:
        raise ValueError("master_seed and rep_index must be nonnegative")
    return Generator(PCG64(SeedSequence(master_seed, spawn_key=(rep_index, stream))))
