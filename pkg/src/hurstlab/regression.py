"""Ordinary least squares in log-log space for scaling exponents."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateCurveError


class CurveKind(Enum):
    RESCALED_RANGE = "rescaled_range"
    DFA_FLUCTUATION = "dfa_fluctuation"


@dataclass(frozen=True)
class ScalingCurve:
    """Pairs (scale, statistic) destined for a log-log regression.

    Scales must be strictly increasing positive integers, statistics
    strictly positive (both axes get logged), and at least three scales
    are required for a meaningful fit.
    """

    scales: tuple[int, ...]
    statistics: tuple[float, ...]
    kind: CurveKind

    def __post_init__(self):
        if len(self.scales) != len(self.statistics):
            raise ValueError("scales and statistics differ in length")
        if len(self.scales) < 3:
            raise DegenerateCurveError(
                f"need at least 3 scales, got {len(self.scales)}"
            )
        if any(s2 <= s1 for s1, s2 in zip(self.scales, self.scales[1:])):
            raise ValueError("scales must be strictly increasing")
        if self.scales[0] <= 0:
            raise ValueError("scales must be positive")
        if any(stat <= 0 or not np.isfinite(stat) for stat in self.statistics):
            raise DegenerateCurveError(
                "statistics must be finite and strictly positive for the log fit"
            )


@dataclass(frozen=True)
class PowerLawFit:
    """Slope/intercept/goodness of a log-log OLS fit.

    ``flat`` marks the degenerate zero-variance-in-y case where the
    Pearson correlation is undefined; slope is 0 and r_squared is
    reported as 0 there.
    """

    exponent: float
    intercept: float
    r_squared: float
    flat: bool = False


def ols_line(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float, bool]:
    """Plain OLS of y on x: (slope, intercept, r_squared, flat).

    Raises DegenerateCurveError when x has no variance. Zero variance in
    y gives slope 0, r_squared 0 and flat=True. Exactly collinear points
    report r_squared 1 even in the presence of rounding noise below
    1e-15 of the data scale.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size < 2:
        raise DegenerateCurveError("need at least 2 points for a line")
    xm = x - x.mean()
    ym = y - y.mean()
    sxx = float(xm @ xm)
    if sxx <= 0.0:
        raise DegenerateCurveError("zero variance in the independent variable")
    syy = float(ym @ ym)
    if syy == 0.0:
        return 0.0, float(y.mean()), 0.0, True
    sxy = float(xm @ ym)
    slope = sxy / sxx
    intercept = float(y.mean() - slope * x.mean())
    r_squared = min(1.0, (sxy * sxy) / (sxx * syy))
    return slope, intercept, r_squared, False


def fit_loglog(curve: ScalingCurve) -> PowerLawFit:
    """Fit log(statistic) on log(scale); the slope is the scaling exponent.

    Natural logs on both axes. The exponent is invariant under rescaling
    either axis by a positive constant; only the intercept moves.
    """
    log_n = np.log(np.asarray(curve.scales, dtype=np.float64))
    log_s = np.log(np.asarray(curve.statistics, dtype=np.float64))
    slope, intercept, r_squared, flat = ols_line(log_n, log_s)
    return PowerLawFit(exponent=slope, intercept=intercept,
                       r_squared=r_squared, flat=flat)
