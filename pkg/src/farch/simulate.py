"""Monte Carlo average time-to-rendezvous under primary-user traffic.

A run places X primary users on X distinct channels and lets several
secondary-user pairs hop; each pair has its own uniformly random clock
offset and leading side.  A pair meets at the first slot where both visit
the same channel and no transmitting PU occupies it.

Random draws are laid out so that their number never depends on ``p`` or
``X``: the PU channel order is a full permutation of the channels (the
first X are occupied), each channel gets one static uniform, and every
coincidence slot gets one uniform.  A PU blocks when its uniform is below
``p``.  Two scenarios that differ only in ``p`` or ``X`` therefore see the
same randomness, which makes the TTR pointwise monotone in both.
"""

from __future__ import annotations

import enum
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from farch.errors import InvalidParameterError
from farch.metrics import Direction
from farch.sequences import Permutation, SequencePair, farch_indices, farch_pair

log = logging.getLogger(__name__)


class TrafficMode(enum.Enum):
    PER_SLOT = "per-slot"  # each PU transmits with probability p, independently every slot
    STATIC_PER_RUN = "static"  # one Bernoulli(p) draw per PU for the whole run


@dataclass(frozen=True)
class Scenario:
    n_channels: int
    n_pus: int
    transmit_prob: float
    seed: int
    traffic_mode: TrafficMode = TrafficMode.PER_SLOT
    n_su_pairs: int = 10
    trials: int = 10000
    max_slots: int | None = None  # None means 4 * N**2

    def __post_init__(self):
        object.__setattr__(self, "traffic_mode", TrafficMode(self.traffic_mode))
        n = self.n_channels
        if n < 2:
            raise InvalidParameterError(f"need at least 2 channels, got {n}")
        if not 0 <= self.n_pus < n:
            raise InvalidParameterError(f"need 0 <= X < N, got X={self.n_pus}, N={n}")
        if not 0.0 <= self.transmit_prob <= 1.0:
            raise InvalidParameterError(f"p must lie in [0, 1], got {self.transmit_prob}")
        if self.trials < 1:
            raise InvalidParameterError("trials must be >= 1")
        if self.n_su_pairs < 1:
            raise InvalidParameterError("n_su_pairs must be >= 1")
        if self.max_slots is None:
            object.__setattr__(self, "max_slots", 4 * n * n)
        elif self.max_slots < n * n:
            raise InvalidParameterError(f"max_slots must be >= N^2 = {n * n}")


@dataclass(frozen=True)
class TrialOutcome:
    ttr: int | None  # None on timeout
    rendezvous_channel: int | None
    shift: int
    direction: Direction

    @property
    def timed_out(self) -> bool:
        return self.ttr is None


@dataclass(frozen=True)
class SimStats:
    mean_ttr: float
    std_err: float  # across runs; NaN with a single run
    n_trials: int
    n_samples: int
    timeout_count: int


def _simulate_run(
    senders: np.ndarray,
    receivers: np.ndarray,
    scenario: Scenario,
    rng: np.random.Generator,
) -> list[TrialOutcome]:
    """One run: shared PU placement, independent offsets per pair."""
    n_pairs, T = senders.shape
    n = scenario.n_channels
    p = scenario.transmit_prob

    channel_order = rng.permutation(n)
    static_u = rng.random(n)
    taus = rng.integers(0, T, size=n_pairs)
    dirs = rng.integers(0, 2, size=n_pairs)

    pu_channel = np.zeros(n, dtype=bool)
    pu_channel[channel_order[: scenario.n_pus]] = True
    static_on = pu_channel & (static_u < p)

    sender_ahead = (dirs == Direction.SENDER_AHEAD)[:, None]
    ahead = np.where(sender_ahead, senders, receivers)
    behind = np.where(sender_ahead, receivers, senders)

    limit = scenario.max_slots
    n_periods = -(-limit // T)
    slots = np.arange(T)
    shifted = np.take_along_axis(ahead, (taus[:, None] + slots[None, :]) % T, axis=1)
    # coincidences in row-major (pair, slot) order; the pattern repeats every period
    pair_id, hit = np.nonzero(shifted == behind)
    ch = behind[pair_id, hit]
    u = rng.random((n_periods, hit.size))
    if scenario.traffic_mode is TrafficMode.PER_SLOT:
        blocked = pu_channel[ch] & (u < p)
    else:
        blocked = np.broadcast_to(static_on[ch], u.shape)
    never = np.iinfo(np.int64).max
    when = np.arange(n_periods)[:, None] * T + hit[None, :] + 1
    earliest = np.where(blocked, never, when).min(axis=0)  # per coincidence slot

    best = np.full(n_pairs, never)
    np.minimum.at(best, pair_id, earliest)
    is_first = earliest == best[pair_id]
    first_channel = np.full(n_pairs, -1)
    # several hits of one pair cannot share the same earliest time, so this is unique
    first_channel[pair_id[is_first]] = ch[is_first]

    outcomes = []
    for j in range(n_pairs):
        ok = best[j] <= limit
        outcomes.append(TrialOutcome(
            int(best[j]) if ok else None,
            int(first_channel[j]) if ok else None,
            int(taus[j]),
            Direction(int(dirs[j])),
        ))
    return outcomes


def run_trial(pair: SequencePair, scenario: Scenario, rng: np.random.Generator) -> TrialOutcome:
    """Simulate a single SU pair with its own PU placement."""
    if pair.n_channels != scenario.n_channels:
        raise InvalidParameterError("pair and scenario disagree on N")
    (outcome,) = _simulate_run(
        pair.sender.entries[None, :], pair.receiver.entries[None, :], scenario, rng
    )
    return outcome


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial, derived from (seed, trial index) only."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


PairSource = Callable[[np.random.Generator], SequencePair]


def farch_source(n: int) -> PairSource:
    def make(rng: np.random.Generator) -> SequencePair:
        return farch_pair(Permutation(rng.permutation(n).tolist()))

    return make


def iter_runs(
    scenario: Scenario,
    pair_source: PairSource | None = None,
    fixed_pair: SequencePair | None = None,
) -> Iterator[tuple[list[SequencePair] | np.ndarray, list[TrialOutcome]]]:
    """Yield ``(pairs, outcomes)`` for each trial.

    By default every pair in every trial is a fresh FARCH pair.  ``pairs`` is
    then a ``(n_pairs, N)`` array of the permutations used; with a custom
    source or ``fixed_pair`` it is the list of SequencePair objects.
    """
    n, P = scenario.n_channels, scenario.n_su_pairs
    if fixed_pair is not None and fixed_pair.n_channels != n:
        raise InvalidParameterError("pair and scenario disagree on N")
    if pair_source is None and fixed_pair is None:
        s_idx, r_idx = farch_indices(n)
        base = np.tile(np.arange(n), (P, 1))
    for t in range(scenario.trials):
        rng = trial_rng(scenario.seed, t)
        if fixed_pair is not None:
            pairs = [fixed_pair] * P
            S = np.broadcast_to(fixed_pair.sender.entries, (P, fixed_pair.period))
            R = np.broadcast_to(fixed_pair.receiver.entries, (P, fixed_pair.period))
        elif pair_source is not None:
            pairs = [pair_source(rng) for _ in range(P)]
            S = np.stack([q.sender.entries for q in pairs])
            R = np.stack([q.receiver.entries for q in pairs])
        else:
            pairs = rng.permuted(base, axis=1)
            S, R = pairs[:, s_idx], pairs[:, r_idx]
        yield pairs, _simulate_run(S, R, scenario, rng)


def summarize(run_outcomes: list[list[TrialOutcome]]) -> SimStats:
    ttrs = []
    run_means = []
    timeouts = 0
    for outcomes in run_outcomes:
        done = [o.ttr for o in outcomes if o.ttr is not None]
        timeouts += len(outcomes) - len(done)
        ttrs.extend(done)
        if done:
            run_means.append(sum(done) / len(done))
    mean = float(np.mean(ttrs)) if ttrs else math.nan
    if len(run_means) > 1:
        se = float(np.std(run_means, ddof=1) / math.sqrt(len(run_means)))
    else:
        se = math.nan
    return SimStats(mean, se, len(run_outcomes), len(ttrs), timeouts)


def average_ttr(
    scenario: Scenario,
    pair_source: PairSource | None = None,
    fixed_pair: SequencePair | None = None,
) -> SimStats:
    return summarize([outcomes for _, outcomes in iter_runs(scenario, pair_source, fixed_pair)])


@dataclass
class SweepConfig:
    """Cartesian grid over (N, X, p).

    Give X either as explicit counts (``x``) or as a fraction of N
    (``x_fraction``, rounded down).  Every grid point reuses ``seed`` so
    neighbouring points are directly comparable.
    """

    n: list[int]
    p: list[float]
    seed: int
    x: list[int] | None = None
    x_fraction: list[float] | None = None
    traffic_mode: TrafficMode = TrafficMode.PER_SLOT
    trials: int = 10000
    pairs: int = 10
    max_slots: int | None = None

    def __post_init__(self):
        self.traffic_mode = TrafficMode(self.traffic_mode)
        if (self.x is None) == (self.x_fraction is None):
            raise InvalidParameterError("give exactly one of 'x' or 'x_fraction'")

    @classmethod
    def from_dict(cls, obj: dict) -> "SweepConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(obj) - known
        if unknown:
            raise InvalidParameterError(f"unknown sweep config keys: {sorted(unknown)}")
        missing = {"n", "p", "seed"} - set(obj)
        if missing:
            raise InvalidParameterError(f"missing sweep config keys: {sorted(missing)}")
        return cls(**obj)

    def points(self) -> Iterator[tuple[int, int, float]]:
        for n in self.n:
            if self.x is not None:
                xs = list(self.x)
            else:
                xs = [math.floor(f * n) for f in self.x_fraction]
            for x, p in itertools.product(xs, self.p):
                yield n, x, p


SWEEP_COLUMNS = ["n", "x", "p", "traffic_mode", "trials", "mean_ttr", "std_err", "timeouts", "seed", "note"]


def sweep(config: SweepConfig, progress: Callable[[str], None] | None = None) -> list[dict]:
    rows = []
    for n, x, p in config.points():
        row = {
            "n": n, "x": x, "p": p,
            "traffic_mode": config.traffic_mode.value,
            "trials": config.trials,
            "seed": config.seed,
        }
        try:
            scenario = Scenario(
                n_channels=n, n_pus=x, transmit_prob=p, seed=config.seed,
                traffic_mode=config.traffic_mode, n_su_pairs=config.pairs,
                trials=config.trials, max_slots=config.max_slots,
            )
        except InvalidParameterError as exc:
            row.update(mean_ttr=None, std_err=None, timeouts=None, note=f"skipped: {exc}")
            log.warning("skipping N=%s X=%s p=%s: %s", n, x, p, exc)
        else:
            stats = average_ttr(scenario)
            row.update(mean_ttr=stats.mean_ttr, std_err=stats.std_err, timeouts=stats.timeout_count, note="")
        rows.append({k: row[k] for k in SWEEP_COLUMNS})
        if progress:
            progress(f"N={n} X={x} p={p}: mean_ttr={row['mean_ttr']}")
    return rows


def stats_row(scenario: Scenario, stats: SimStats) -> dict:
    row = {
        "n": scenario.n_channels,
        "x": scenario.n_pus,
        "p": scenario.transmit_prob,
        "traffic_mode": scenario.traffic_mode.value,
        "trials": scenario.trials,
        "mean_ttr": stats.mean_ttr,
        "std_err": stats.std_err,
        "timeouts": stats.timeout_count,
        "seed": scenario.seed,
        "note": "",
    }
    return row
