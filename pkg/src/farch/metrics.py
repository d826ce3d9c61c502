"""Exact rendezvous metrics by enumeration over every clock offset.

Conventions: with direction ``SENDER_AHEAD`` the sender's clock leads by
``tau`` slots and time-to-rendezvous is counted on the receiver's clock,
i.e. a rendezvous on channel k at receiver slot i means
``sender[(tau + i) % T] == receiver[i] == k``.  ``RECEIVER_AHEAD`` swaps the
roles.  Reported slot counts are 1-based.

Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from farch.errors import InvalidParameterError, MetricUndefinedError
from farch.sequences import ChannelSequence, SequencePair, check_compatible, is_cyclic_shift_of


class Direction(enum.IntEnum):
    SENDER_AHEAD = 0
    RECEIVER_AHEAD = 1


def _ahead_behind(u: ChannelSequence, v: ChannelSequence, direction: Direction):
    if Direction(direction) is Direction.SENDER_AHEAD:
        return u.entries, v.entries
    return v.entries, u.entries


def hit_count(
    u: ChannelSequence,
    v: ChannelSequence,
    tau: int,
    n: int,
    k: int,
    direction: Direction = Direction.SENDER_AHEAD,
) -> int:
    """Coincidences on channel ``k`` within the first ``n`` slots of the behind sequence.

    With ``SENDER_AHEAD``, ``u`` leads ``v`` by ``tau``; otherwise ``v`` leads ``u``.
    """
    check_compatible(u, v)
    T = u.period
    if not 1 <= n <= T:
        raise InvalidParameterError(f"prefix length must be in [1, {T}], got {n}")
    if not 0 <= k < u.n_channels:
        raise InvalidParameterError(f"channel {k} outside Z_{u.n_channels}")
    if tau < 0:
        raise InvalidParameterError(f"shift must be non-negative, got {tau}")
    ahead, behind = _ahead_behind(u, v, direction)
    i = np.arange(n)
    a = ahead[(tau + i) % T]
    b = behind[:n]
    return int(np.count_nonzero((a == b) & (b == k)))


@dataclass(frozen=True)
class RendezvousProfile:
    """First-rendezvous slot per (direction, shift, channel).

    ``first_slot[d, tau, k]`` is the 1-based slot of the behind sequence at
    which the pair first meets on channel ``k``, or 0 if it never does
    within one period.
    """

    n_channels: int
    period: int
    first_slot: np.ndarray

    def get(self, direction: Direction, tau: int, k: int) -> int | None:
        val = int(self.first_slot[int(direction), tau % self.period, k])
        return val or None

    @property
    def complete(self) -> bool:
        return bool(np.all(self.first_slot > 0))


def _first_slots_one_direction(ahead: np.ndarray, behind: np.ndarray, n: int) -> np.ndarray:
    T = ahead.size
    shifted = ahead[(np.arange(T)[:, None] + np.arange(T)[None, :]) % T]  # [tau, i]
    hit = shifted == behind[None, :]
    slot = np.arange(1, T + 1)
    out = np.zeros((T, n), dtype=np.int64)
    never = T + 1
    for k in range(n):
        cols = behind == k
        if not cols.any():
            continue
        cand = np.where(hit[:, cols], slot[cols][None, :], never)
        first = cand.min(axis=1)
        out[:, k] = np.where(first == never, 0, first)
    return out


def build_profile(pair: SequencePair) -> RendezvousProfile:
    n, T = pair.n_channels, pair.period
    table = np.empty((2, T, n), dtype=np.int64)
    for d in Direction:
        ahead, behind = _ahead_behind(pair.sender, pair.receiver, d)
        table[d] = _first_slots_one_direction(ahead, behind, n)
    table.setflags(write=False)
    return RendezvousProfile(n, T, table)


def _profile(pair_or_profile) -> RendezvousProfile:
    if isinstance(pair_or_profile, RendezvousProfile):
        return pair_or_profile
    return build_profile(pair_or_profile)


def is_max_diversity(pair: SequencePair | RendezvousProfile) -> bool:
    return _profile(pair).complete


def mttr_h(pair: SequencePair | RendezvousProfile, h: int) -> int:
    """Worst-case TTR when an adversary may block up to ``h`` channels.

    For a fixed offset the adversary does best by blocking the h channels
    that meet earliest, so the answer at that offset is the (h+1)-th
    smallest first-rendezvous slot.
    """
    prof = _profile(pair)
    _check_h(prof.n_channels, h)
    if not prof.complete:
        raise MetricUndefinedError("pair does not have maximal rendezvous diversity")
    ordered = np.sort(prof.first_slot, axis=2)
    return int(ordered[:, :, h].max())


def mttr_h_vector(pair: SequencePair | RendezvousProfile) -> list[int]:
    prof = _profile(pair)
    if not prof.complete:
        raise MetricUndefinedError("pair does not have maximal rendezvous diversity")
    ordered = np.sort(prof.first_slot, axis=2)
    return [int(x) for x in ordered.max(axis=(0, 1))]


def _check_h(n: int, h: int) -> None:
    if not 0 <= h <= n - 1:
        raise InvalidParameterError(f"h must be in [0, {n - 1}], got {h}")


def mttr(pair: SequencePair | RendezvousProfile) -> int | None:
    """MTTR, or None if some offset never meets on any channel.

    Defined even without maximal diversity as long as every offset in both
    directions meets somewhere.
    """
    prof = _profile(pair)
    fs = np.where(prof.first_slot > 0, prof.first_slot, np.iinfo(np.int64).max)
    per_offset = fs.min(axis=2)
    if np.any(per_offset == np.iinfo(np.int64).max):
        return None
    return int(per_offset.max())


def mcttr(pair: SequencePair | RendezvousProfile) -> int:
    prof = _profile(pair)
    return mttr_h(prof, prof.n_channels - 1)


def _coincidences(ahead: np.ndarray, behind: np.ndarray, tau: int) -> list[tuple[int, int]]:
    T = len(behind)
    return [(i + 1, int(behind[i])) for i in range(T) if ahead[(tau + i) % T] == behind[i]]


def mttr_h_oracle(pair: SequencePair, h: int) -> int:
    """Literal subset enumeration of MTTR_h; exponential, meant for N <= 8.

    Scans positions directly rather than going through ``build_profile``.
    """
    n, T = pair.n_channels, pair.period
    _check_h(n, h)
    worst = 0
    for d in Direction:
        ahead, behind = _ahead_behind(pair.sender, pair.receiver, d)
        ahead, behind = ahead.tolist(), behind.tolist()
        for tau in range(T):
            meets = _coincidences(ahead, behind, tau)
            for available in itertools.combinations(range(n), n - h):
                avail = set(available)
                first = next((slot for slot, ch in meets if ch in avail), None)
                if first is None:
                    raise MetricUndefinedError("pair does not have maximal rendezvous diversity")
                worst = max(worst, first)
    return worst


def correlation_sum_check(
    u: ChannelSequence, m: int, v: ChannelSequence, k: int
) -> tuple[int, int]:
    """Both sides of: sum over tau of H_{v^tau, u_m}(k) == x_k * y_k.

    x_k counts k in the first m entries of u, y_k counts k in all of v.
    """
    check_compatible(u, v)
    lhs = sum(
        hit_count(u, v, tau, m, k, Direction.RECEIVER_AHEAD) for tau in range(u.period)
    )
    x_k = int(np.count_nonzero(u.entries[:m] == k))
    y_k = int(np.count_nonzero(v.entries == k))
    return lhs, x_k * y_k


@dataclass(frozen=True)
class MetricsReport:
    n: int
    period: int
    max_diversity: bool
    mttr: int | None
    mcttr: int | None
    mttr_h: tuple[int | None, ...]
    sender_counts: tuple[int, ...]
    receiver_counts: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "period": self.period,
            "max_diversity": self.max_diversity,
            "mttr": self.mttr,
            "mcttr": self.mcttr,
            "mttr_h": list(self.mttr_h),
            "visit_counts": {
                "sender": list(self.sender_counts),
                "receiver": list(self.receiver_counts),
            },
        }


def metrics_report(pair: SequencePair, profile: RendezvousProfile | None = None) -> MetricsReport:
    prof = profile or build_profile(pair)
    n = pair.n_channels
    full = prof.complete
    if full:
        curve: list[int | None] = list(mttr_h_vector(prof))
    else:
        curve = [mttr(prof)] + [None] * (n - 1)
    return MetricsReport(
        n=n,
        period=pair.period,
        max_diversity=full,
        mttr=curve[0],
        mcttr=curve[-1] if full else None,
        mttr_h=tuple(curve),
        sender_counts=tuple(int(c) for c in pair.sender.counts()),
        receiver_counts=tuple(int(c) for c in pair.receiver.counts()),
    )


@dataclass(frozen=True)
class BoundCheck:
    value: int
    bound: int
    applicable: bool = True

    @property
    def passed(self) -> bool:
        return self.value >= self.bound

    def to_dict(self) -> dict:
        return {"value": self.value, "bound": self.bound, "pass": self.passed, "applicable": self.applicable}


@dataclass(frozen=True)
class BoundReport:
    mcttr: BoundCheck
    mttr: BoundCheck
    mttr_h: tuple[BoundCheck, ...]  # h = 0 .. N-2
    uniform_frequency: bool
    distinct: bool

    @property
    def all_pass(self) -> bool:
        checks = (self.mcttr, self.mttr, *self.mttr_h)
        return all(c.passed for c in checks if c.applicable)

    def to_dict(self) -> dict:
        return {
            "mcttr": self.mcttr.to_dict(),
            "mttr": self.mttr.to_dict(),
            "mttr_h": [dict(h=h, **c.to_dict()) for h, c in enumerate(self.mttr_h)],
            "uniform_frequency": self.uniform_frequency,
            "distinct": self.distinct,
            "all_pass": self.all_pass,
        }


def is_uniform_frequency(seq: ChannelSequence) -> bool:
    counts = seq.counts()
    return bool(np.all(counts == counts[0]))


def bound_report(pair: SequencePair, profile: RendezvousProfile | None = None) -> BoundReport:
    """Compare measured metrics with the MCTTR >= N^2, MTTR >= N and MTTR_h >= (h+1)N bounds.

    The MTTR and MTTR_h bounds only apply when MCTTR hits N^2 exactly.
    """
    prof = profile or build_profile(pair)
    curve = mttr_h_vector(prof)  # raises when diversity is not maximal
    n = pair.n_channels
    optimal = curve[-1] == n * n
    return BoundReport(
        mcttr=BoundCheck(curve[-1], n * n),
        mttr=BoundCheck(curve[0], n, applicable=optimal),
        mttr_h=tuple(BoundCheck(curve[h], (h + 1) * n, applicable=optimal) for h in range(n - 1)),
        uniform_frequency=is_uniform_frequency(pair.sender) and is_uniform_frequency(pair.receiver),
        distinct=not (
            is_cyclic_shift_of(pair.sender, pair.receiver)
            or is_cyclic_shift_of(pair.receiver, pair.sender)
        ),
    )


def mttr_h_curve_rows(report: MetricsReport, h_max: int | None = None) -> list[dict]:
    """Rows ``h, mttr_h, lower_bound`` for plotting; the last bound is N^2."""
    n = report.n
    top = n - 1 if h_max is None else min(h_max, n - 1)
    rows = []
    for h in range(top + 1):
        bound = n * n if h == n - 1 else (h + 1) * n
        rows.append({"h": h, "mttr_h": report.mttr_h[h], "lower_bound": bound})
    return rows
