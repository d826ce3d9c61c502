"""Brute-force oracles and pair generators shared by the test modules.

The oracles here work from raw python lists with explicit loops so they
share no code path with the numpy implementation they check.
"""

from __future__ import annotations

import numpy as np

from farch import ChannelSequence, SequencePair

SEED_FOR_EXAMPLE_N4 = 14  # random_permutation(4, 14) == [0, 3, 2, 1]
SEED_FOR_EXAMPLE_N5 = 167  # random_permutation(5, 167) == [1, 4, 3, 0, 2]

EXAMPLE1_N4_SENDER = [0, 3, 2, 1] * 4
EXAMPLE1_N4_RECEIVER = [0, 0, 0, 0, 3, 3, 3, 3, 2, 2, 2, 2, 1, 1, 1, 1]
EXAMPLE1_N5_SENDER = [1, 4, 3, 0, 2] * 5
EXAMPLE1_N5_RECEIVER = [1, 2, 0, 3, 4, 0, 3, 4, 0, 3, 4, 0, 3, 4, 0, 3, 4, 1, 2, 1, 2, 1, 2, 1, 2]

SECTION3_U = [0, 0, 1, 1, 0, 0, 1, 1]
SECTION3_V = [0, 0, 0, 0, 1, 1, 1, 1]


def brute_hits(u, v, tau, n, k, u_ahead=True):
    T = len(u)
    a, b = (u, v) if u_ahead else (v, u)
    return sum(1 for i in range(n) if a[(tau + i) % T] == b[i] == k)


def brute_first_slot(u, v, tau, k, u_ahead=True):
    T = len(u)
    a, b = (u, v) if u_ahead else (v, u)
    for i in range(T):
        if a[(tau + i) % T] == b[i] == k:
            return i + 1
    return None


def brute_max_diversity(u, v, n):
    T = len(u)
    return all(
        brute_first_slot(u, v, tau, k, ahead) is not None
        for ahead in (True, False)
        for tau in range(T)
        for k in range(n)
    )


def block_pair(n: int, rng: np.random.Generator, block: int | None = None) -> SequencePair:
    """Random max-diversity pair that is not FARCH.

    The sender is a run of aligned length-n blocks, each an independent
    random permutation; the receiver dwells ``block >= 2n - 1`` slots on each
    channel in random order.  Any ``2n - 1`` consecutive sender slots cover
    a full aligned block, so every dwell meets every channel.
    """
    block = block or int(rng.integers(2 * n - 1, 2 * n + 2))
    # period must be a multiple of n so aligned blocks stay aligned under wrap
    period = n * block
    if period % n:
        raise AssertionError
    sender = np.concatenate([rng.permutation(n) for _ in range(period // n)])
    order = rng.permutation(n)
    receiver = np.repeat(order, block)
    if rng.random() < 0.5:
        sender, receiver = receiver, sender
    return SequencePair(ChannelSequence(n, sender), ChannelSequence(n, receiver))


def rejection_pair(n: int, rng: np.random.Generator, period: int, tries: int = 10000) -> SequencePair:
    """Uniform random pair conditioned on maximal diversity (small n only)."""
    for _ in range(tries):
        u = rng.integers(0, n, size=period).tolist()
        v = rng.integers(0, n, size=period).tolist()
        if brute_max_diversity(u, v, n):
            return SequencePair(ChannelSequence(n, u), ChannelSequence(n, v))
    raise RuntimeError("no max-diversity pair found")


def random_max_diversity_pair(n: int, rng: np.random.Generator) -> SequencePair:
    if n <= 3 and rng.random() < 0.5:
        return rejection_pair(n, rng, period=int(rng.integers(4 * n * n, 5 * n * n + 1)))
    return block_pair(n, rng)
