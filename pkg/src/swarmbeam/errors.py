"""Exception hierarchy shared across the package."""


class SwarmbeamError(Exception):
    """Base class for all errors raised by swarmbeam."""


class DomainError(SwarmbeamError, ValueError):
    """A numeric argument is outside the physical domain of an operation."""


class DegenerateArrayError(SwarmbeamError):
    """The array has no mainlobe to normalize against (zero total excitation)."""


class ConfigError(SwarmbeamError):
    """A configuration value or run setup is invalid."""


class SolutionValidationError(SwarmbeamError):
    """A candidate solution violates scenario constraints.

    Carries the full list of human-readable violations so callers can report
    every problem at once instead of the first one found.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
