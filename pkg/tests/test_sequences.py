import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from farch import (
    BaselineKind,
    ChannelSequence,
    IncompatiblePairError,
    InvalidParameterError,
    Origin,
    Permutation,
    SequencePair,
    baseline_pair,
    cyclic_shift,
    farch_pair,
    random_permutation,
)
from farch.sequences import is_cyclic_shift_of

from helpers import (
    EXAMPLE1_N4_RECEIVER,
    EXAMPLE1_N4_SENDER,
    EXAMPLE1_N5_RECEIVER,
    EXAMPLE1_N5_SENDER,
)

permutations = st.integers(2, 13).flatmap(lambda n: st.permutations(list(range(n))))


def test_channel_sequence_rejects_out_of_range():
    with pytest.raises(InvalidParameterError):
        ChannelSequence(3, [0, 1, 3])
    with pytest.raises(InvalidParameterError):
        ChannelSequence(3, [0, -1])
    with pytest.raises(InvalidParameterError):
        ChannelSequence(3, [])


def test_channel_sequence_is_immutable():
    seq = ChannelSequence(3, [0, 1, 2])
    with pytest.raises(ValueError):
        seq.entries[0] = 2
    with pytest.raises(AttributeError):
        seq.n_channels = 4


def test_pair_requires_matching_shape():
    with pytest.raises(IncompatiblePairError):
        SequencePair(ChannelSequence(2, [0, 1]), ChannelSequence(3, [0, 1]))
    with pytest.raises(IncompatiblePairError):
        SequencePair(ChannelSequence(2, [0, 1]), ChannelSequence(2, [0, 1, 0]))


def test_permutation_validation():
    with pytest.raises(InvalidParameterError):
        Permutation([0, 0, 1])
    with pytest.raises(InvalidParameterError):
        Permutation([0])
    with pytest.raises(InvalidParameterError):
        farch_pair([1, 2, 3])


def test_random_permutation_n2():
    for seed in range(20):
        assert list(random_permutation(2, seed)) in ([0, 1], [1, 0])


def test_random_permutation_deterministic():
    assert random_permutation(4, 1234) == random_permutation(4, 1234)
    assert random_permutation(9, 2**63 + 5) == random_permutation(9, 2**63 + 5)


def test_random_permutation_rejects_small_n():
    with pytest.raises(InvalidParameterError):
        random_permutation(1, 0)


def test_random_permutation_roughly_uniform_n5():
    support = set(itertools.permutations(range(5)))
    counts = Counter(random_permutation(5, seed).image for seed in range(10000))
    assert set(counts) <= support
    observed = np.array([counts.get(p, 0) for p in sorted(support)])
    chi2 = ((observed - 10000 / 120) ** 2 / (10000 / 120)).sum()
    assert chi2 < stats.chi2.ppf(0.999, df=119)


def test_example1_n4():
    pair = farch_pair([0, 3, 2, 1])
    assert pair.sender.tolist() == EXAMPLE1_N4_SENDER
    assert pair.receiver.tolist() == EXAMPLE1_N4_RECEIVER
    assert pair.origin is Origin.FARCH


def test_example1_n5():
    pair = farch_pair([1, 4, 3, 0, 2])
    assert pair.sender.tolist() == EXAMPLE1_N5_SENDER
    assert pair.receiver.tolist() == EXAMPLE1_N5_RECEIVER


def test_farch_n2():
    pair = farch_pair([0, 1])
    assert pair.sender.tolist() == [0, 1, 0, 1]
    assert pair.receiver.tolist() == [0, 0, 1, 1]


def test_farch_n3_middle_block_is_single_symbol():
    pair = farch_pair([2, 0, 1])
    # [w0, w2] + [w1]*3 + [w0, w2]*2
    assert pair.receiver.tolist() == [2, 1, 0, 0, 0, 2, 1, 2, 1]


@given(permutations)
def test_farch_structure(w):
    n = len(w)
    pair = farch_pair(w)
    s, r = pair.sender.tolist(), pair.receiver.tolist()
    assert len(s) == len(r) == n * n
    assert all(s[i] == w[i % n] for i in range(n * n))
    assert all((pair.sender.counts() == n).tolist())
    assert all((pair.receiver.counts() == n).tolist())
    if n % 2 == 0:
        for i in range(n):
            assert r[i * n:(i + 1) * n] == [w[i]] * n
    else:
        for i in range(n * n):
            for j in range(n * n):
                assert (s[i] == s[j]) == ((i - j) % n == 0)
                if i != j and (i - j) % n == 0:
                    assert r[i] != r[j]


def test_cyclic_shift_examples():
    seq = ChannelSequence(3, [1, 0, 2])
    assert cyclic_shift(seq, 0) == seq
    assert cyclic_shift(seq, 1).tolist() == [0, 2, 1]
    assert cyclic_shift(seq, 3) == seq


@given(
    st.lists(st.integers(0, 4), min_size=1, max_size=30),
    st.integers(0, 100),
    st.integers(0, 100),
)
def test_cyclic_shift_composes(entries, a, b):
    seq = ChannelSequence(5, entries)
    assert cyclic_shift(cyclic_shift(seq, a), b) == cyclic_shift(seq, a + b)
    T = len(entries)
    assert cyclic_shift(seq, a).tolist() == [entries[(i + a) % T] for i in range(T)]


@settings(max_examples=50)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=12), st.integers(0, 20))
def test_is_cyclic_shift_of(entries, tau):
    seq = ChannelSequence(3, entries)
    assert is_cyclic_shift_of(cyclic_shift(seq, tau), seq)
    brute = any(
        [entries[(i + t) % len(entries)] for i in range(len(entries))] == [0] * len(entries)
        for t in range(len(entries))
    )
    assert is_cyclic_shift_of(ChannelSequence(3, [0] * len(entries)), seq) == brute


def test_round_robin_baseline():
    pair = baseline_pair(BaselineKind.ROUND_ROBIN, 2)
    assert pair.sender.tolist() == pair.receiver.tolist() == [0, 1, 0, 1]
    assert baseline_pair("round-robin", 3).sender.tolist() == [0, 1, 2] * 3


def test_uniform_random_baseline_deterministic():
    a = baseline_pair(BaselineKind.UNIFORM_RANDOM, 4, seed=9)
    b = baseline_pair(BaselineKind.UNIFORM_RANDOM, 4, seed=9)
    assert a == b
    assert a.period == 16
    assert baseline_pair(BaselineKind.UNIFORM_RANDOM, 4, seed=10) != a


def test_baseline_rejects_small_n():
    with pytest.raises(InvalidParameterError):
        baseline_pair(BaselineKind.ROUND_ROBIN, 1)
