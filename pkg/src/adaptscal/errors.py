"""Exception types raised across the package."""


class InvalidArgumentError(ValueError):
    """An input violates a documented precondition."""


class UnsupportedDimensionError(InvalidArgumentError):
    """The operation is not defined for this number of objectives."""


class SingularityError(InvalidArgumentError):
    """A singular kernel was evaluated at zero separation."""


class RunAbortError(RuntimeError):
    """A run hit a non-finite value and was stopped."""


class ConfigError(ValueError):
    """An experiment configuration field is invalid."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
