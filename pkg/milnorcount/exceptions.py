class ArrangementError(Exception):
    """Raised when an arrangement document cannot be turned into a valid central
    arrangement (ragged or zero rows, duplicate hyperplanes, empty list...)."""

    pass


class PreconditionError(Exception):
    """Raised when an operation is called outside of its domain, e.g. on a
    non-essential arrangement, on the wrong ambient dimension or at a bad prime."""

    pass


class BudgetExceededError(Exception):
    """Raised when a brute-force enumeration would exceed the configured budget of
    field evaluations."""

    pass


class HodgeDataError(Exception):
    """Raised when cohomology data required by a computation is missing, or when
    Hodge types are required but some classes are untyped."""

    pass


class InconsistencyError(Exception):
    """Raised when two independent computations of the same quantity disagree.
    This always signals a bug or corrupted input."""

    pass
