"""Exception taxonomy for the library.

Every error raised on purpose derives from :class:`CoulombError`, so callers
(and the CLI) can distinguish parameter-gate problems from numerical failures
with two ``except`` clauses instead of a dozen.
"""


class CoulombError(Exception):
    """Base class for all library-specific errors."""


class GateViolation(CoulombError):
    """A documented parameter precondition does not hold (caller error)."""


class DegenerateOrder(GateViolation):
    """The order parameter makes a recurrence denominator vanish (or sits in
    an unsupported range such as real L <= -1)."""


class NonConvergence(CoulombError):
    """A series did not meet its truncation rule within the configured
    maximum number of terms (see COULOMB_MAX_TERMS)."""


class GammaOverflow(CoulombError):
    """The combined prefactor exponent exceeds the floating-point range even
    after working in log space."""


class BoundsInvalid(CoulombError):
    """A Rayleigh-sum table entry needed for two-sided bounds is nonpositive;
    the bounds would be meaningless, so they are refused instead of clamped."""


class NoRootInScanRange(CoulombError):
    """No sign change found below the scan ceiling."""


class NonMonotoneBracket(CoulombError):
    """Internal bug trap: root refinement escaped its bracket."""


class PoleOnCircle(CoulombError):
    """A scan hit a grid point where the denominator function vanishes to
    working precision, so the ratio there is meaningless."""


class ZeroEnumerationIncomplete(CoulombError):
    """Consecutive-zero spacing test suggests a zero was skipped."""


class DegenerateFit(CoulombError):
    """Order-fit errors underflow the resolvable range (increase precision
    or reduce the expansion order)."""


class RingMismatch(CoulombError, TypeError):
    """Arithmetic attempted between values from different coefficient rings."""


class RegionWarning(UserWarning):
    """Parameters are outside the comfortable/stated validity region; the
    value is computed anyway and this warning flags it."""
