"""Exception hierarchy shared by all hurstlab modules.

Three families map onto the CLI exit codes: InputError -> 2,
ComputationError -> 3, ConfigError -> 4.
"""


class HurstLabError(Exception):
    """Base class for all hurstlab errors."""


class InputError(HurstLabError):
    """The input data itself is unusable."""


class ComputationError(HurstLabError):
    """The requested analysis cannot produce a result on this input."""


class ConfigError(HurstLabError):
    """The requested configuration is invalid or inconsistent."""


# -- input parsing ----------------------------------------------------------

class MalformedRowError(InputError):
    """A CSV row could not be parsed into (date, price)."""


class NonPositivePriceError(InputError):
    """A close price was zero or negative."""


class DuplicateDateError(InputError):
    """Two observations share the same date."""


class TooShortError(InputError):
    """Fewer than two observations."""


# -- estimation -------------------------------------------------------------

class DegenerateCurveError(ComputationError):
    """Scaling curve has too few points or no spread in log(scale)."""


class AllSegmentsDegenerateError(ComputationError):
    """Every segment at a scale had zero standard deviation."""


class BoxTooLargeError(ComputationError):
    """Fewer than two detrending boxes fit into the series."""


class SeriesTooShortError(ComputationError):
    """Series shorter than the rolling window."""


class EmptyTraceError(ComputationError):
    """Rolling trace holds no usable measurements."""


class TraceTooShortError(ComputationError):
    """Rolling trace too short to classify."""


class NonPositiveHError(ComputationError):
    """Fractal dimension is undefined for h <= 0."""


# -- downfall analysis ------------------------------------------------------

class NoDownfallsError(ComputationError):
    """Operation requires at least one downfall episode."""


class TooFewError(ComputationError):
    """Not enough values for the requested statistic."""


class ZeroVarianceError(ComputationError):
    """Kurtosis is undefined for a zero-variance sample."""


class EmptyScanError(ComputationError):
    """Kurtosis scan produced no usable entries."""


# -- generation -------------------------------------------------------------

class FactorizationFailureError(ComputationError):
    """Covariance factorization failed; the exact matrix is positive
    definite, so this signals a numerical or implementation problem."""


# -- configuration ----------------------------------------------------------

class AlreadyTransformedError(ConfigError):
    """Transforms apply only to raw return series."""


class InvalidPlanError(ConfigError):
    """Partition plan violates its invariants."""


class HOutOfRangeError(ConfigError):
    """Hurst parameter must lie strictly inside (0, 1)."""


class LengthTooLargeError(ConfigError):
    """Requested length exceeds the exact-generation cost bound."""
