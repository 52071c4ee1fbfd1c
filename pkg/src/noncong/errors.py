"""Exception types shared across the package.

Every domain error derives from NoncongError so the CLI can map the whole
family onto its usage/precondition exit code.
"""


class NoncongError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(NoncongError):
    """An operation was called outside its documented domain."""


class IncompatibleAlphaError(NoncongError):
    """Sum of two q-expansions whose leading exponents differ by a non-integer."""


class NonUnitError(NoncongError):
    """Inversion or rational power of a series without invertible leading term."""


class PrecisionError(NoncongError):
    """A coefficient beyond the known truncation window was requested."""


class ReducibleRepresentationError(PreconditionError):
    """n divides 3, so the induced representation is reducible."""


class PoleError(NoncongError):
    """A hypergeometric lower parameter is a non-positive integer."""


class IntegralityError(NoncongError):
    """A coefficient that must be an integer is not one (implementation bug)."""


class BadReductionError(PreconditionError):
    """The curve y^2 = x^n + 64 has bad reduction at the requested prime."""


class InapplicablePrimeError(PreconditionError):
    """The prime does not satisfy p = -1 mod n."""


class InconsistencyError(NoncongError):
    """Two supposedly equal computation paths disagree."""
