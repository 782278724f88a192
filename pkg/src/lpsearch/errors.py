"""Exception types shared across the package."""


class CapacityError(ValueError):
    """A request exceeds a fixed table or integer capacity."""


class DomainError(ValueError):
    """An objective was evaluated outside the region where it is defined."""


class NoFeasiblePointError(RuntimeError):
    """Every trial point of a search was rejected as infeasible."""


class ConfigError(ValueError):
    """A benchmark configuration is invalid."""
