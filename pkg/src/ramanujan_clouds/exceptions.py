"""Custom exception hierarchy for the Ramanujan expansions toolkit."""


class RamanujanToolkitError(Exception):
    """Base exception for all toolkit errors."""

    condition: str = "error"

    def __init__(self, message: str, *, condition: str | None = None) -> None:
        super().__init__(message)
        if condition is not None:
            self.condition = condition


class DomainError(RamanujanToolkitError):
    """Raised when an input lies outside the domain of an operation."""

    condition = "domain"


class PreconditionError(RamanujanToolkitError):
    """Raised when a side condition of an operation is violated."""

    condition = "precondition"


class ResourceError(RamanujanToolkitError):
    """Raised when a scan would exceed the configured budget."""

    condition = "scan_budget"


class SpecParseError(RamanujanToolkitError):
    """Raised when a coefficient or function document is malformed."""

    condition = "parse"

    def __init__(self, message: str, *, location: str = "") -> None:
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class ClassificationError(RamanujanToolkitError):
    """Raised when a coefficient breaks the finitely-many-bad-primes guarantee."""

    condition = "classification"


class FinitenessNotProvableError(RamanujanToolkitError):
    """Raised when a series cannot be shown to have finitely many nonzero terms."""

    condition = "finiteness_not_provable"


class NotMultiplicativeError(RamanujanToolkitError):
    """Raised when a tabulated function is required to be multiplicative but is not."""

    condition = "not_multiplicative"


class NotSemiMultiplicativeError(RamanujanToolkitError):
    """Raised when a tabulated function has no Selberg factorization."""

    condition = "not_semi_multiplicative"

    def __init__(self, message: str, *, pair: tuple[int, int] | None = None) -> None:
        super().__init__(message)
        self.pair = pair


class UnsupportedBranchError(RamanujanToolkitError):
    """Raised when a contraction experiment has |alpha| between 1 and rho."""

    condition = "unsupported_branch"


class NotGrowingError(RamanujanToolkitError):
    """Raised when a growth exponent is requested for a trace that does not grow."""

    condition = "not_growing"
