"""Exception types raised across the package."""


class InvalidArgumentError(ValueError):
    """An argument is outside the domain of an operation."""


class DegenerateGeometryError(ValueError):
    """Two positions coincide where a direction is required."""


class ConfigError(ValueError):
    """A scenario document failed validation.

    ``field`` names the offending key (dotted path) when known.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
