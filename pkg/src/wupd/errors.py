"""Exception hierarchy for the wupd package.

Every error raised by the library derives from :class:`WupdError`, so callers
can catch one base class at API boundaries (the CLI maps them to exit codes).
"""


class WupdError(Exception):
    """Base class for all wupd errors."""


class NonPositiveValueError(WupdError):
    """A density value, weight, or parameter that must be > 0 was not."""


class NonFiniteIntegralError(WupdError):
    """A quadrature sum came out infinite or NaN, so normalization failed."""


class LengthMismatchError(WupdError):
    """Two sequences that must be paired elementwise have different lengths."""


class NonPositiveGammaError(NonPositiveValueError):
    """Power-transform exponent must be strictly positive."""


class NonPositiveWeightError(NonPositiveValueError):
    """Updating weights (prior and likelihood exponents) must be > 0."""


class IndexOutOfRangeError(WupdError, IndexError):
    """Grid point index outside [0, len(points))."""


class GridMismatchError(WupdError):
    """Two densities that must share a support grid do not."""


class SupportMismatchError(WupdError):
    """A grid lies outside the support of an analytic family."""


class DivergentResultError(WupdError):
    """A power transform or weighted update leaves the family non-normalizable."""


class NotADispersionPairError(WupdError):
    """An operation requiring a monotone-dispersion pair got something else."""


class InvariantViolationError(WupdError):
    """A mathematically guaranteed relation failed numerically; signals a bug."""


class InvalidConfigError(WupdError):
    """Scenario/analysis configuration failed validation.

    The message always names the offending field path.
    """


class InsufficientDataError(WupdError):
    """Weight estimation needs at least two observations."""


class InvalidSearchBoxError(WupdError):
    """Weight-estimation search box is empty, inverted, or non-positive."""
