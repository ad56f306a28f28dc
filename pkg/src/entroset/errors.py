"""Exception hierarchy.

Everything raised on purpose derives from EntrosetError, so callers (and the
CLI) can separate input/feasibility problems (exit code 2) from genuine
inequality violations (reported in a CheckReport, never raised).
Out-of-range coordinate indices raise the builtin IndexError.
"""


class EntrosetError(Exception):
    """Base class for all package errors."""


class DomainError(EntrosetError):
    """A map was applied to an element outside its declared domain."""


class SuitabilityError(EntrosetError):
    """k is not a common multiple of the probability denominators."""


class SizeGuardError(EntrosetError):
    """An enumeration would exceed the configured size limit."""


class MembershipError(EntrosetError):
    """A vector is not a member of the type-class set it was claimed in."""


class ApproximationError(EntrosetError):
    """No usable rational approximation exists at the requested precision."""


class SchemaError(EntrosetError):
    """Malformed or incomplete input data (JSON or constructor arguments)."""


class InfeasibleError(EntrosetError):
    """The cover LP has no feasible point (some element is uncovered)."""


class CoverError(EntrosetError):
    """The supplied cover does not satisfy the required cover property."""


class NegativeCoefficientError(EntrosetError):
    """Negative exponents are not allowed in cardinality-side checks."""


class EmptySliceError(EntrosetError):
    """Conditioning value is not attained by any point of the set."""
