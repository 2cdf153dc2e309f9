"""Exception taxonomy shared across the package.

UsageError marks caller mistakes (bad shapes, unknown names, malformed flags),
ValidationError marks data that violates a declared invariant, and
VerificationError marks a numerical identity that failed beyond tolerance.
The CLI maps these to exit codes 2, 2 and 1 respectively.
"""


class UsageError(ValueError):
    """The caller invoked an operation with inconsistent arguments."""


class ValidationError(ValueError):
    """A value object violates one of its structural invariants."""


class VerificationError(RuntimeError):
    """A checked identity exceeded its tolerance."""
