"""Exception types shared across the package.

Every error carries enough context to name the offending object; callers
that need machine-readable diagnostics can read the attributes instead of
parsing messages.
"""


class BruhatError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(BruhatError, ValueError):
    """A precondition on arguments was violated (bad sizes, ranges, parses)."""


class AmbientMismatchError(InvalidArgumentError):
    """Two objects with different ground-set sizes were combined."""


class DomainMismatchError(InvalidArgumentError):
    """An order does not range over the domain required by the operation."""


class NotAdmissibleError(BruhatError):
    """An operation required an admissible order but the input is not one."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class NotRealizableError(BruhatError):
    """A set failed the packet prefix/suffix condition."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAChainError(BruhatError):
    """A packet flip was requested but the packet is not contiguous."""


class NotReducedError(BruhatError):
    """A word claimed to be reduced crosses some pair of strands twice."""


class MalformedSliceError(InvalidArgumentError):
    """A gather operation received a segment whose endpoints are not packet members."""


class DegenerateInputError(InvalidArgumentError):
    """An affine set contained a class with two entries congruent mod the period."""


class BudgetExceededError(BruhatError):
    """A configured enumeration cap was hit; carries partial statistics."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InternalConsistencyError(BruhatError):
    """A structural guarantee failed; indicates a bug, not bad input."""


class VerificationFailure(BruhatError):
    """An empirical verification found a counterexample; carries the witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
