"""The three plaintext one-step population-size estimators.

Each estimator is a ratio of pooled free ends to observed matches, scaled
to undo the sampling bias.  Zero denominators are reported as failure
values rather than exceptions so an experiment driver can tally failure
rates alongside the estimates.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .graph import MultiGraph, harmonic_mean
from .sampling import RdsSample, as_sample_view


class FailureCause(Enum):
    ZERO_MATCHES = "ZeroMatches"
    ZERO_CROSS_MATCHES = "ZeroCrossMatches"
    DEGENERATE_DEGREES = "DegenerateDegrees"
    NO_ROOT = "NoRoot"


@dataclass(frozen=True)
class EstimateResult:
    """Either a finite positive estimate or an explicit failure."""

    value: Optional[float] = None
    failure_cause: Optional[FailureCause] = None

    def __post_init__(self):
        if (self.value is None) == (self.failure_cause is None):
            raise ValueError("exactly one of value / failure_cause must be set")

    @property
    def failed(self) -> bool:
        return self.failure_cause is not None

    @classmethod
    def success(cls, value: float) -> "EstimateResult":
        return cls(value=float(value))

    @classmethod
    def failure(cls, cause: FailureCause) -> "EstimateResult":
        return cls(failure_cause=cause)


def _pooled_counts(sample: RdsSample) -> tuple[int, int]:
    """(free-end count, match count) over the sample's alter bags.

    Subjects carry multiplicity 1, so a match contributes once per distinct
    in-sample alter regardless of parallel-edge multiplicity.
    """
    subject_set = set(sample.order)
    free = 0
    matched = 0
    for u in sample.order:
        bag = sample.alters[u]
        free += bag.cardinality()
        matched += sum(1 for v in bag if v in subject_set)
    return free, matched


def estimate_n1_from_view(sample: RdsSample) -> EstimateResult:
    """Uniform-sample estimator on an already materialized sample view."""
    if sample.size == 0:
        raise ValueError("cannot estimate from an empty sample")
    free, matched = _pooled_counts(sample)
    if matched == 0:
        return EstimateResult.failure(FailureCause.ZERO_MATCHES)
    return EstimateResult.success(sample.size * free / matched)


def estimate_n1(g: MultiGraph, subjects: Iterable[int]) -> EstimateResult:
    """Population size from a uniform vertex sample: |T| * <R(T)> / <M(T)>."""
    return estimate_n1_from_view(as_sample_view(g, subjects))


def _degree_stats(sample: RdsSample) -> Optional[tuple[float, float]]:
    """(arithmetic, harmonic) mean reported degree, or None when degenerate."""
    degs = [sample.degrees[u] for u in sample.order]
    if any(d <= 0 for d in degs):
        return None
    mean = sum(degs) / len(degs)
    if mean <= 1.0:
        return None
    return mean, harmonic_mean(degs)


def estimate_n2(sample: RdsSample) -> EstimateResult:
    """Referral-sample estimator: [(d(S)-1)/d~(S)] * |S| * <R(S,F)> / <M(S,F)>."""
    if sample.size == 0:
        raise ValueError("cannot estimate from an empty sample")
    stats = _degree_stats(sample)
    if stats is None:
        return EstimateResult.failure(FailureCause.DEGENERATE_DEGREES)
    mean_deg, harm_deg = stats
    free, matched = _pooled_counts(sample)
    if matched == 0:
        return EstimateResult.failure(FailureCause.ZERO_MATCHES)
    value = (mean_deg - 1.0) / harm_deg * sample.size * free / matched
    return EstimateResult.success(value)


def estimate_n3(sample: RdsSample) -> EstimateResult:
    """Cross-component estimator: discounts matches inside a referral tree.

    Requires more than one referral component; anything less is a caller
    error, not an estimation failure.
    """
    comps = sample.components()
    if len(comps) <= 1:
        raise ValueError("cross-seed estimation needs more than one referral component")
    stats = _degree_stats(sample)
    if stats is None:
        return EstimateResult.failure(FailureCause.DEGENERATE_DEGREES)
    _, harm_deg = stats

    numerator = 0.0
    cross = 0
    members = list(sample.order)
    total_degree = sum(sample.degrees[u] for u in members)
    for seed, component in comps.items():
        complement_size = len(members) - len(component)
        complement_set = {u for u in members if sample.seed_of[u] != seed}
        comp_free = sum(sample.alters[u].cardinality() for u in component)
        cross += sum(
            1 for u in component for v in sample.alters[u] if v in complement_set
        )
        comp_degree = total_degree - sum(sample.degrees[u] for u in component)
        comp_mean = comp_degree / complement_size
        numerator += (comp_mean - 1.0) / harm_deg * complement_size * comp_free
    if cross == 0:
        return EstimateResult.failure(FailureCause.ZERO_CROSS_MATCHES)
    return EstimateResult.success(numerator / cross)
