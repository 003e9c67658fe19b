# twolayer/errors.py
"""Exception hierarchy. ``exit_code`` is what the CLI returns for the error."""


class TwoLayerError(Exception):
    exit_code = 1


class DomainError(TwoLayerError):
    """A mathematically invalid request: singular point, excluded branch, divergent series."""
    exit_code = 1


class SingularLocusError(DomainError):
    pass


class BranchError(DomainError):
    """Parameters fall outside the validity predicate of a catalog entry."""


class NonTerminatingSeriesError(DomainError):
    pass


class NotDifferentiableError(DomainError):
    pass


class SolvabilityError(DomainError):
    pass


class NumericalInstabilityError(DomainError):
    def __init__(self, message, last_healthy_step=None):
        super().__init__(message)
        self.last_healthy_step = last_healthy_step


class UsageError(TwoLayerError):
    exit_code = 2


class ConfigError(UsageError):
    pass


class GridMismatchError(UsageError):
    pass


class BoundarySettingError(UsageError):
    pass


class DependentGeneratorsError(UsageError):
    pass


class ExpPolyParseError(UsageError):
    pass
