"""Exception types shared across the package."""


class DdrBenchError(Exception):
    """Base class for every package-specific error."""


class DomainError(DdrBenchError, ValueError):
    """An argument violates an operation's documented precondition."""


class DegenerateSignalError(DomainError):
    """The observed signal carries no power, so ratios are undefined."""


class DegenerateDeterministicError(DomainError):
    """The deterministic part is constant, so it cannot be rescaled."""


class DegenerateTargetError(DomainError):
    """Targets have zero variance, so normalized errors are undefined."""


class SamplerError(DdrBenchError, RuntimeError):
    """The sampling chain could not take a valid step."""


class ConfigError(DdrBenchError, ValueError):
    """An experiment or CLI configuration is invalid."""
