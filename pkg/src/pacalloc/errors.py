"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input fails a structural or numeric check.

    The message names the offending field or parameter so callers can
    report it directly.
    """


class CapacityError(RuntimeError):
    """Raised when an exact computation would exceed its configured cap.

    Exact oracles refuse oversized inputs instead of silently switching
    to an estimator; the message says which cap was hit and what the
    caller can do about it (raise the cap or use Monte Carlo).
    """


class SolverError(RuntimeError):
    """Internal solver failure, e.g. an exhausted pivot guard."""


class SearchInfeasibleError(RuntimeError):
    """No feasible contribution vector exists inside the search box."""
