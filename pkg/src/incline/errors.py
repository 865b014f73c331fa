"""Exception types shared across the package."""


class InclineError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(InclineError):
    """A value does not belong to the carrier of the incline in use."""


class StructureError(InclineError):
    """Matrix dimensions or inclines do not match, or a shape is illegal."""


class FormatError(InclineError):
    """A JSON document or table description is malformed."""


class InvalidInclineError(InclineError):
    """An operation-table incline violates one of the defining laws.

    Carries the full validation report as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NoncommutativeError(InvalidInclineError):
    """Multiplication table is not commutative.

    Raised separately from other law violations: every other aspect of the
    table may be fine, but noncommutative inclines are out of scope here.
    """


class OracleDisagreementError(InclineError):
    """The multiset test and the prime-code test disagreed on some pair.

    This cannot happen for a labeling of pairwise-distinct primes; seeing it
    means a bug (or a bad labeling slipped past validation).
    """
