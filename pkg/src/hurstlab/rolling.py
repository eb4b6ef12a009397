"""Sliding-window ("dynamic") Hurst estimation over a long return series.

Window i covers returns [i*lag, i*lag + window); every window is
estimated independently, so a trace entry always equals the standalone
estimate on that slice. Failed windows are kept as explicit gaps rather
than dropped or interpolated.
"""
from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dfa import DfaConfig, FitTarget, default_box_sizes, estimate_hurst_dfa
from .errors import (
    ComputationError,
    ConfigError,
    EmptyTraceError,
    SeriesTooShortError,
    TraceTooShortError,
)
from .rescaled_range import (
    DEFAULT_MIN_SEGMENT,
    EstimatorKind,
    PartitionPolicy,
    StdMode,
    build_partition_plan,
    estimate_hurst_rs,
)
from .series import ReturnSeries, Transform, transform_returns


@dataclass(frozen=True)
class RollingConfig:
    """Window size, lag and estimator for one sweep.

    ``plan_policy`` None selects the fixed 250-sample fragmentation when
    window == 250 and the divisors plan otherwise.
    """

    window: int = 250
    lag: int = 5
    estimator: EstimatorKind = EstimatorKind.RESCALED_RANGE
    transform: Transform = Transform.RAW
    plan_policy: PartitionPolicy | None = None
    min_segment_length: int = DEFAULT_MIN_SEGMENT
    std_mode: StdMode = StdMode.POPULATION
    dfa_fit_target: FitTarget = FitTarget.FLUCTUATION_RMS

    def __post_init__(self):
        if self.window < 2:
            raise ConfigError("window must be >= 2")
        if self.lag < 1:
            raise ConfigError("lag must be >= 1")

    def resolved_policy(self) -> PartitionPolicy:
        if self.plan_policy is not None:
            return self.plan_policy
        if self.window == 250:
            return PartitionPolicy.PRESET_250
        return PartitionPolicy.DIVISORS_ONLY


@dataclass(frozen=True)
class RollingMeasurement:
    """One window's estimate; h is None for a failed (gap) window."""

    end_date: dt.date
    h: float | None
    r_squared: float | None
    note: str = ""

    @property
    def is_gap(self) -> bool:
        return self.h is None


@dataclass(frozen=True)
class RollingTrace:
    config: RollingConfig
    measurements: tuple[RollingMeasurement, ...]

    @property
    def count(self) -> int:
        return len(self.measurements)

    def h_values(self) -> np.ndarray:
        return np.array([m.h for m in self.measurements if not m.is_gap])


@dataclass(frozen=True)
class TraceSummary:
    """Extrema, mean and cut-point proportions over non-gap measurements.

    Proportions use strict inequalities on both sides: a measurement
    exactly at a cut point counts for neither side.
    """

    h_min: float
    h_max: float
    h_mean: float
    first_measurement_date: dt.date
    count: int
    proportions: dict[float, float]
    fraction_below_half: float


class MarketClassKind(Enum):
    MATURE = "mature"
    EMERGENT = "emergent"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class ClassifierThresholds:
    """Defaults for the mature/emergent/hybrid rule; all overridable.

    Calibrated against 250-sample rescaled-range sweeps of synthetic
    traces, whose finite-sample bias centers memoryless series near
    h = 0.56 rather than 0.5: white noise must classify mature, fGn at
    h = 0.8 emergent, and alternating mixtures of the two hybrid.
    """

    mature_band: tuple[float, float] = (0.45, 0.60)
    mature_high_cut: float = 0.7
    mature_high_max_fraction: float = 0.1
    emergent_mean_min: float = 0.6
    emergent_low_cut: float = 0.55
    emergent_low_max_fraction: float = 0.1
    min_measurements: int = 10


@dataclass(frozen=True)
class MarketClass:
    kind: MarketClassKind
    rationale: str


def estimate_window(values: np.ndarray, config: RollingConfig):
    """Standalone estimate of one window under a rolling config."""
    if config.estimator is EstimatorKind.RESCALED_RANGE:
        plan = build_partition_plan(values.size, config.resolved_policy(),
                                    config.min_segment_length)
        return estimate_hurst_rs(values, plan, config.std_mode)
    dfa_config = DfaConfig(box_sizes=default_box_sizes(values.size),
                           fit_target=config.dfa_fit_target)
    return estimate_hurst_dfa(values, dfa_config)


def sweep(returns: ReturnSeries, config: RollingConfig) -> RollingTrace:
    """Estimate h over every window; exactly floor((L-w)/lag)+1 entries."""
    transformed = transform_returns(returns, config.transform)
    values = transformed.values
    length = values.size
    if length < config.window:
        raise SeriesTooShortError(
            f"{length} returns cannot fill a window of {config.window}"
        )
    count = (length - config.window) // config.lag + 1
    measurements = []
    for i in range(count):
        start = i * config.lag
        stop = start + config.window
        end_date = transformed.dates[stop - 1]
        try:
            estimate = estimate_window(values[start:stop], config)
        except ComputationError as exc:
            measurements.append(RollingMeasurement(
                end_date=end_date, h=None, r_squared=None,
                note=f"{type(exc).__name__}: {exc}",
            ))
        else:
            measurements.append(RollingMeasurement(
                end_date=end_date, h=estimate.h,
                r_squared=estimate.r_squared,
            ))
    return RollingTrace(config=config, measurements=tuple(measurements))


def summarize(trace: RollingTrace, cut_points: tuple[float, ...] = (0.5, 0.6, 0.7)
              ) -> TraceSummary:
    """Extrema/mean/proportions of the usable measurements."""
    h = trace.h_values()
    if h.size == 0:
        raise EmptyTraceError("trace has no usable measurements")
    proportions = {float(c): float((h > c).mean()) for c in cut_points}
    return TraceSummary(
        h_min=float(h.min()),
        h_max=float(h.max()),
        h_mean=float(h.mean()),
        first_measurement_date=trace.measurements[0].end_date,
        count=int(h.size),
        proportions=proportions,
        fraction_below_half=float((h < 0.5).mean()),
    )


def classify_market(trace: RollingTrace,
                    thresholds: ClassifierThresholds = ClassifierThresholds(),
                    ) -> MarketClass:
    """Mature / emergent / hybrid from the trace's h distribution."""
    h = trace.h_values()
    if h.size < thresholds.min_measurements:
        raise TraceTooShortError(
            f"need at least {thresholds.min_measurements} measurements, "
            f"got {h.size}"
        )
    mean = float(h.mean())
    lo, hi = thresholds.mature_band
    frac_high = float((h > thresholds.mature_high_cut).mean())
    frac_low = float((h < thresholds.emergent_low_cut).mean())
    if lo <= mean <= hi and frac_high <= thresholds.mature_high_max_fraction:
        kind = MarketClassKind.MATURE
        rationale = (f"mean h {mean:.3f} in [{lo}, {hi}] and only "
                     f"{frac_high:.0%} of windows above "
                     f"{thresholds.mature_high_cut}")
    elif (mean >= thresholds.emergent_mean_min
          and frac_low <= thresholds.emergent_low_max_fraction):
        kind = MarketClassKind.EMERGENT
        rationale = (f"mean h {mean:.3f} >= {thresholds.emergent_mean_min} "
                     f"and only {frac_low:.0%} of windows below "
                     f"{thresholds.emergent_low_cut}")
    else:
        kind = MarketClassKind.HYBRID
        rationale = (f"mean h {mean:.3f} with {frac_high:.0%} above "
                     f"{thresholds.mature_high_cut} and {frac_low:.0%} below "
                     f"{thresholds.emergent_low_cut} fits neither profile")
    return MarketClass(kind=kind, rationale=rationale)
