"""Peak-to-trough downfall episodes and the progressive kurtosis scan.

An episode opens at the running maximum once the close declines, bottoms
at the lowest close of the episode, and closes at the first bar whose
close recovers to the opening ceiling or to the highest close of the
trailing lookback window, whichever is lower. Episode depths, ordered
from smallest, are scanned for the subset whose excess kurtosis is
nearest zero; deeper episodes than that cutoff fall in the heavy-tailed
(leptokurtic) regime, the rest in the random (mesokurtic) regime.
"""
from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import (
    ConfigError,
    EmptyScanError,
    NoDownfallsError,
    TooFewError,
    ZeroVarianceError,
)
from .series import PriceSeries

#: Six calendar months of daily closes, in trading days.
DEFAULT_LOOKBACK_DAYS = 126


class KurtosisMode(Enum):
    POPULATION = "population"  # 1/n central moments
    SAMPLE = "sample"          # bias-corrected sample excess


class Regime(Enum):
    MESOKURTIC = "mesokurtic"
    LEPTOKURTIC = "leptokurtic"


@dataclass(frozen=True)
class Downfall:
    """One peak-to-trough episode; recovery fields are None while open."""

    peak_date: dt.date
    trough_date: dt.date
    recovery_date: dt.date | None
    depth: float
    duration_days: int
    peak_index: int
    trough_index: int
    recovery_index: int | None

    @property
    def is_open(self) -> bool:
        return self.recovery_date is None


@dataclass(frozen=True)
class KurtosisScanEntry:
    upper_index: int      # how many of the smallest depths are included
    upper_value: float    # depth of the largest included downfall
    excess_kurtosis: float


@dataclass(frozen=True)
class KurtosisScan:
    entries: tuple[KurtosisScanEntry, ...]
    skipped_subsets: tuple[int, ...] = ()  # zero-variance subset sizes


@dataclass(frozen=True)
class CriticalLevel:
    cutoff_depth: float
    cutoff_index: int
    kurtosis_at_cutoff: float


def _trailing_max(closes: np.ndarray, lookback: int) -> np.ndarray:
    """out[t] = max of the up-to-`lookback` closes strictly before t."""
    n = closes.size
    out = np.empty(n)
    out[0] = np.nan  # no prior bar
    head = min(lookback, n - 1)
    out[1: head + 1] = np.maximum.accumulate(closes[:head])
    if n - 1 > lookback:
        windows = np.lib.stride_tricks.sliding_window_view(closes[:-1], lookback)
        out[lookback + 1:] = windows.max(axis=1)[1:]
    return out


def extract_downfalls(prices: PriceSeries,
                      lookback_days: int = DEFAULT_LOOKBACK_DAYS,
                      min_depth: float = 0.0) -> list[Downfall]:
    """Scan the price series left to right for downfall episodes.

    Any decline from the running maximum opens an episode (min_depth
    filters the result list, not the scan). An episode still open at the
    series end is emitted with recovery fields None. Episodes never
    overlap; the recovery bar becomes the next peak candidate.
    """
    if lookback_days < 1:
        raise ConfigError("lookback_days must be >= 1")
    closes = prices.closes
    dates = prices.dates
    n = closes.size
    trailing = _trailing_max(closes, lookback_days)
    log_close = np.log(closes)

    episodes: list[Downfall] = []

    def emit(peak: int, last: int, recovery: int | None) -> None:
        # Trough is the lowest close before the recovery bar; an open
        # episode scans through the final bar.
        lo = peak + 1
        hi = recovery if recovery is not None else last + 1
        trough = lo + int(np.argmin(closes[lo:hi]))
        depth = float(log_close[peak] - log_close[trough])
        if depth >= min_depth:
            episodes.append(Downfall(
                peak_date=dates[peak],
                trough_date=dates[trough],
                recovery_date=dates[recovery] if recovery is not None else None,
                depth=depth,
                duration_days=trough - peak,
                peak_index=peak,
                trough_index=trough,
                recovery_index=recovery,
            ))

    peak = 0
    in_episode = False
    ceiling = 0.0
    for t in range(1, n):
        c = closes[t]
        if in_episode:
            if c >= min(ceiling, trailing[t]):
                emit(peak, t, t)
                in_episode = False
                peak = t
        elif c > closes[peak]:
            peak = t
        elif c < closes[peak]:
            in_episode = True
            ceiling = float(closes[peak])
    if in_episode:
        emit(peak, n - 1, None)
    return episodes


def rank_size_points(downfalls: Sequence[Downfall],
                     include_open: bool = False) -> list[tuple[float, float]]:
    """(ln rank, ln depth) with rank 1 for the deepest episode."""
    depths = sorted(_depths(downfalls, include_open), reverse=True)
    if not depths:
        raise NoDownfallsError("no episodes to rank")
    return [(math.log(rank), math.log(depth))
            for rank, depth in enumerate(depths, start=1)]


def excess_kurtosis(values: Sequence[float],
                    mode: KurtosisMode = KurtosisMode.POPULATION) -> float:
    """Fisher excess kurtosis; zero in expectation for normal data."""
    x = np.asarray(values, dtype=np.float64)
    n = x.size
    if n < 4:
        raise TooFewError(f"kurtosis needs at least 4 values, got {n}")
    # max == min detects constant samples robustly; the mean of identical
    # floats is not always exact, so m2 == 0 would miss them.
    if float(x.max()) == float(x.min()):
        raise ZeroVarianceError("kurtosis undefined for constant values")
    dev = x - x.mean()
    m2 = float((dev * dev).mean())
    m4 = float((dev ** 4).mean())
    g2 = m4 / (m2 * m2) - 3.0
    if mode is KurtosisMode.POPULATION:
        return g2
    # Standard bias-corrected sample excess kurtosis.
    return ((n + 1) * g2 + 6.0) * (n - 1) / ((n - 2) * (n - 3))


def _depths(downfalls: Sequence[Downfall], include_open: bool) -> list[float]:
    return [d.depth for d in downfalls if include_open or not d.is_open]


def progressive_kurtosis(downfalls: Sequence[Downfall],
                         include_open: bool = False,
                         mode: KurtosisMode = KurtosisMode.POPULATION,
                         ) -> KurtosisScan:
    """Excess kurtosis of the k smallest depths for every k from 4 up.

    Open episodes are excluded by default (their depth is not final).
    Zero-variance subsets are skipped and reported, not treated as zero.
    """
    depths = sorted(_depths(downfalls, include_open))
    if len(depths) < 5:
        raise TooFewError(
            f"progressive scan needs at least 5 episodes, got {len(depths)}"
        )
    entries = []
    skipped = []
    values = np.asarray(depths)
    for k in range(4, len(depths) + 1):
        try:
            kurt = excess_kurtosis(values[:k], mode)
        except ZeroVarianceError:
            skipped.append(k)
            continue
        entries.append(KurtosisScanEntry(
            upper_index=k,
            upper_value=float(values[k - 1]),
            excess_kurtosis=kurt,
        ))
    return KurtosisScan(entries=tuple(entries), skipped_subsets=tuple(skipped))


def critical_cutoff(scan: KurtosisScan) -> CriticalLevel:
    """The scan entry whose kurtosis is nearest zero; ties prefer the
    larger subset (fewer events claimed as self-organized)."""
    if not scan.entries:
        raise EmptyScanError("scan has no usable entries")
    best = scan.entries[0]
    for entry in scan.entries[1:]:
        if abs(entry.excess_kurtosis) <= abs(best.excess_kurtosis):
            best = entry
    return CriticalLevel(
        cutoff_depth=best.upper_value,
        cutoff_index=best.upper_index,
        kurtosis_at_cutoff=best.excess_kurtosis,
    )


def classify_episode(downfall: Downfall, critical: CriticalLevel) -> Regime:
    """Leptokurtic strictly above the cutoff; the boundary stays mesokurtic."""
    if downfall.depth > critical.cutoff_depth:
        return Regime.LEPTOKURTIC
    return Regime.MESOKURTIC
