"""Channel-hopping sequences and the FARCH sender/receiver construction.

A sequence is a period-T word over the channel alphabet ``{0, ..., N-1}``;
slot ``i`` (0-based) holds the channel visited in the (i+1)-th slot of a
period.  FARCH builds a sender/receiver pair of period N**2 from a single
permutation ``w`` of the channels:

* sender: ``w`` repeated N times;
* receiver, N even: slot ``i*N + j`` holds ``w[i]``;
* receiver, N odd: ``[w0, w_{N-1}]``, then N copies of
  ``[w_{N-2}, ..., w_1]``, then N-1 copies of ``[w0, w_{N-1}]``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from farch.errors import IncompatiblePairError, InvalidParameterError


def _frozen_int_array(values: Iterable[int]) -> np.ndarray:
    arr = np.array(list(values) if not isinstance(values, np.ndarray) else values)
    if arr.ndim != 1:
        raise InvalidParameterError("expected a flat sequence of integers")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise InvalidParameterError("entries must be integers")
    arr = arr.astype(np.int64, copy=True)
    arr.setflags(write=False)
    return arr


class ChannelSequence:
    """Immutable period-T channel-hopping word over ``Z_N``."""

    __slots__ = ("n_channels", "entries")

    def __init__(self, n_channels: int, entries: Iterable[int]):
        if int(n_channels) != n_channels or n_channels < 1:
            raise InvalidParameterError(f"n_channels must be a positive integer, got {n_channels!r}")
        arr = _frozen_int_array(entries)
        if arr.size < 1:
            raise InvalidParameterError("a sequence needs at least one slot")
        if arr.min() < 0 or arr.max() >= n_channels:
            bad = arr[(arr < 0) | (arr >= n_channels)][0]
            raise InvalidParameterError(f"channel {bad} outside Z_{n_channels}")
        object.__setattr__(self, "n_channels", int(n_channels))
        object.__setattr__(self, "entries", arr)

    def __setattr__(self, name, value):
        raise AttributeError("ChannelSequence is immutable")

    @property
    def period(self) -> int:
        return int(self.entries.size)

    def __len__(self) -> int:
        return self.period

    def __iter__(self) -> Iterator[int]:
        return iter(self.tolist())

    def __getitem__(self, i: int) -> int:
        return int(self.entries[i % self.period])

    def tolist(self) -> list[int]:
        return [int(c) for c in self.entries]

    def counts(self) -> np.ndarray:
        """Number of visits to each channel over one period."""
        return np.bincount(self.entries, minlength=self.n_channels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChannelSequence):
            return NotImplemented
        return self.n_channels == other.n_channels and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.n_channels, self.entries.tobytes()))

    def __repr__(self) -> str:
        body = self.tolist()
        if len(body) > 20:
            shown = ", ".join(map(str, body[:20])) + ", ..."
        else:
            shown = ", ".join(map(str, body))
        return f"ChannelSequence(N={self.n_channels}, T={self.period}, [{shown}])"


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __init__(self, image: Iterable[int]):
        img = tuple(int(x) for x in image)
        n = len(img)
        if n < 2:
            raise InvalidParameterError(f"permutation needs n >= 2, got {n}")
        if sorted(img) != list(range(n)):
            raise InvalidParameterError(f"{list(img)} is not a permutation of Z_{n}")
        object.__setattr__(self, "image", img)

    @property
    def n(self) -> int:
        return len(self.image)

    def __getitem__(self, i: int) -> int:
        return self.image[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.image)

    def __len__(self) -> int:
        return len(self.image)


class Origin(enum.Enum):
    FARCH = "farch"
    EXTERNAL = "external"


@dataclass(frozen=True)
class SequencePair:
    sender: ChannelSequence
    receiver: ChannelSequence
    origin: Origin = Origin.EXTERNAL
    permutation: Permutation | None = field(default=None, compare=False)

    def __post_init__(self):
        check_compatible(self.sender, self.receiver)
        if self.origin is Origin.FARCH and self.permutation is None:
            raise InvalidParameterError("FARCH pairs must carry their permutation")

    @property
    def n_channels(self) -> int:
        return self.sender.n_channels

    @property
    def period(self) -> int:
        return self.sender.period


def check_compatible(u: ChannelSequence, v: ChannelSequence) -> None:
    if u.n_channels != v.n_channels:
        raise IncompatiblePairError(f"channel counts differ: {u.n_channels} vs {v.n_channels}")
    if u.period != v.period:
        raise IncompatiblePairError(f"periods differ: {u.period} vs {v.period}")


def external_pair(n_channels: int, sender: Sequence[int], receiver: Sequence[int]) -> SequencePair:
    return SequencePair(ChannelSequence(n_channels, sender), ChannelSequence(n_channels, receiver))


def random_permutation(n: int, seed: int) -> Permutation:
    """Uniform permutation of ``Z_n``; the same ``(n, seed)`` always gives the same result."""
    if n < 2:
        raise InvalidParameterError(f"n must be >= 2, got {n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return Permutation(rng.permutation(n).tolist())


def farch_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Positions into ``w`` for every slot of the FARCH sender and receiver.

    ``sender[t] == w[s_idx[t]]`` and ``receiver[t] == w[r_idx[t]]``.  The
    pattern depends only on N, which lets callers build many pairs at once
    by fancy-indexing a stack of permutations.
    """
    if n < 2:
        raise InvalidParameterError(f"n must be >= 2, got {n}")
    slots = np.arange(n * n)
    s_idx = slots % n
    if n % 2 == 0:
        r_idx = slots // n
    else:
        head = [0, n - 1]
        middle = list(range(n - 2, 0, -1))
        r_idx = np.array(head + middle * n + head * (n - 1))
    assert r_idx.size == n * n
    return s_idx, np.asarray(r_idx, dtype=np.int64)


def farch_pair(w: Permutation | Sequence[int]) -> SequencePair:
    if not isinstance(w, Permutation):
        w = Permutation(w)
    n = w.n
    image = np.array(w.image)
    s_idx, r_idx = farch_indices(n)
    return SequencePair(
        sender=ChannelSequence(n, image[s_idx]),
        receiver=ChannelSequence(n, image[r_idx]),
        origin=Origin.FARCH,
        permutation=w,
    )


def cyclic_shift(seq: ChannelSequence, tau: int) -> ChannelSequence:
    """Entry ``i`` of the result is entry ``(i + tau) mod T`` of ``seq``."""
    if tau < 0:
        raise InvalidParameterError(f"shift must be non-negative, got {tau}")
    return ChannelSequence(seq.n_channels, np.roll(seq.entries, -(tau % seq.period)))


def is_cyclic_shift_of(u: ChannelSequence, v: ChannelSequence) -> bool:
    """True if ``u == v^tau`` for some tau."""
    if u.n_channels != v.n_channels or u.period != v.period:
        return False
    doubled = np.concatenate([v.entries, v.entries])
    windows = np.lib.stride_tricks.sliding_window_view(doubled, u.period)[: v.period]
    return bool(np.any(np.all(windows == u.entries, axis=1)))


class BaselineKind(enum.Enum):
    ROUND_ROBIN = "round-robin"
    UNIFORM_RANDOM = "uniform-random"


def baseline_pair(kind: BaselineKind, n: int, seed: int = 0) -> SequencePair:
    """Negative-control pairs of period N**2."""
    if n < 2:
        raise InvalidParameterError(f"n must be >= 2, got {n}")
    kind = BaselineKind(kind)
    if kind is BaselineKind.ROUND_ROBIN:
        word = np.tile(np.arange(n), n)
        return SequencePair(ChannelSequence(n, word), ChannelSequence(n, word))
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.integers(0, n, size=n * n)
    v = rng.integers(0, n, size=n * n)
    return SequencePair(ChannelSequence(n, u), ChannelSequence(n, v))
