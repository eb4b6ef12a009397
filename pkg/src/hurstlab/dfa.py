"""Detrended fluctuation analysis as a second, independent Hurst estimator.

The working signal (by default the cumulative sum of the mean-centered
series) is cut into non-overlapping boxes of tau points; a straight line
is least-squares fitted in each box and the mean squared residual
averaged across boxes gives <F^2(tau)>. Its scaling with tau carries the
Hurst exponent: by default the slope of log sqrt(<F^2>) on log tau is
reported, so white noise comes out near 0.5. The literal squared-
fluctuation reading is available via fit_target.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import BoxTooLargeError, InvalidPlanError
from .regression import CurveKind, PowerLawFit, ScalingCurve, ols_line
from .rescaled_range import EstimatorKind, HurstEstimate, estimate_from_curve


class FitTarget(Enum):
    FLUCTUATION_RMS = "rms"          # fit log sqrt(<F^2>) on log tau
    FLUCTUATION_SQUARED = "squared"  # fit log <F^2> on log tau


@dataclass(frozen=True)
class DfaConfig:
    """Box schedule and fitting choices for DFA."""

    box_sizes: tuple[int, ...]
    integrate_first: bool = True
    fit_target: FitTarget = FitTarget.FLUCTUATION_RMS

    def __post_init__(self):
        if len(self.box_sizes) < 3:
            raise InvalidPlanError(
                f"need at least 3 box sizes, got {len(self.box_sizes)}"
            )
        if any(b < 4 for b in self.box_sizes):
            raise InvalidPlanError("box sizes must be >= 4")
        if any(b2 <= b1 for b1, b2 in zip(self.box_sizes, self.box_sizes[1:])):
            raise InvalidPlanError("box sizes must be strictly increasing")

    def validate_for_length(self, length: int) -> None:
        if self.box_sizes[-1] > length // 4:
            raise BoxTooLargeError(
                f"largest box {self.box_sizes[-1]} exceeds length/4 "
                f"= {length // 4}"
            )


def default_box_sizes(length: int, min_box: int = 8) -> tuple[int, ...]:
    """Powers of two from min_box up to length // 8."""
    sizes = []
    b = min_box
    while b <= length // 8:
        sizes.append(b)
        b *= 2
    if len(sizes) < 3:
        raise InvalidPlanError(
            f"length {length} too short for a box schedule from {min_box}"
        )
    return tuple(sizes)


def profile(series: Sequence[float]) -> np.ndarray:
    """Cumulative sum of the mean-centered series; last element is ~0."""
    x = np.asarray(series, dtype=np.float64)
    if x.size < 2:
        raise ValueError(f"need at least 2 values, got {x.size}")
    return np.cumsum(x - x.mean())


def dfa_fluctuation(series: Sequence[float], tau: int,
                    config: DfaConfig | None = None) -> float:
    """Mean squared fluctuation <F^2(tau)> around per-box linear trends.

    Only integrate_first is consulted from the config (default True);
    boxes are anchored at index 0 and the remainder is discarded.
    """
    x = np.asarray(series, dtype=np.float64)
    if tau < 4:
        raise InvalidPlanError(f"box size must be >= 4, got {tau}")
    if x.size // tau < 2:
        raise BoxTooLargeError(
            f"box size {tau} leaves fewer than 2 boxes in length {x.size}"
        )
    integrate = True if config is None else config.integrate_first
    signal = profile(x) if integrate else x
    return _kernels.dfa_box_fsq(signal, tau)


def dfa_scaling_curve(series: Sequence[float], config: DfaConfig) -> ScalingCurve:
    """(tau, <F^2(tau)>) over the configured box sizes."""
    x = np.asarray(series, dtype=np.float64)
    config.validate_for_length(x.size)
    signal = profile(x) if config.integrate_first else x
    stats = tuple(_kernels.dfa_box_fsq(signal, tau) for tau in config.box_sizes)
    return ScalingCurve(scales=config.box_sizes, statistics=stats,
                        kind=CurveKind.DFA_FLUCTUATION)


def estimate_dfa_from_curve(curve: ScalingCurve,
                            fit_target: FitTarget = FitTarget.FLUCTUATION_RMS,
                            ) -> HurstEstimate:
    """Fit a <F^2(tau)> curve; the rms target halves the log ordinate."""
    log_tau = np.log(np.asarray(curve.scales, dtype=np.float64))
    log_fsq = np.log(np.asarray(curve.statistics, dtype=np.float64))
    if fit_target is FitTarget.FLUCTUATION_RMS:
        slope, intercept, r_squared, flat = ols_line(log_tau, 0.5 * log_fsq)
    else:
        slope, intercept, r_squared, flat = ols_line(log_tau, log_fsq)
    fit = PowerLawFit(exponent=slope, intercept=intercept,
                      r_squared=r_squared, flat=flat)
    return estimate_from_curve(curve, EstimatorKind.DFA, fit=fit)


def estimate_hurst_dfa(series: Sequence[float], config: DfaConfig) -> HurstEstimate:
    """DFA Hurst estimate; the retained curve stores <F^2(tau)>."""
    curve = dfa_scaling_curve(series, config)
    return estimate_dfa_from_curve(curve, config.fit_target)
