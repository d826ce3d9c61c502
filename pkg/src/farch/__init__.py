"""FARCH channel-hopping sequences: construction, exact rendezvous metrics, PU-traffic simulation."""

from farch.errors import (
    IncompatiblePairError,
    InvalidParameterError,
    InvariantViolation,
    MetricUndefinedError,
)
from farch.metrics import (
    BoundReport,
    Direction,
    MetricsReport,
    RendezvousProfile,
    bound_report,
    build_profile,
    correlation_sum_check,
    hit_count,
    is_max_diversity,
    mcttr,
    metrics_report,
    mttr,
    mttr_h,
    mttr_h_oracle,
    mttr_h_vector,
)
from farch.sequences import (
    BaselineKind,
    ChannelSequence,
    Origin,
    Permutation,
    SequencePair,
    baseline_pair,
    cyclic_shift,
    external_pair,
    farch_pair,
    random_permutation,
)
from farch.simulate import Scenario, SimStats, TrafficMode, TrialOutcome, average_ttr, run_trial, sweep

__version__ = "0.1.0"
