"""Exception and warning types shared across the package."""


class ModelInputError(ValueError):
    """An argument violates the documented domain of an operation."""


class DegenerateInputError(ModelInputError):
    """A denominator in the requested formula is zero."""


class SingularityError(DegenerateInputError):
    """The formula is only defined as a limit at this point."""


class ConfigError(ModelInputError):
    """A scenario or savings specification failed validation.

    ``field`` names the offending configuration key when one is known.
    """

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class NegativeProfitWarning(RuntimeWarning):
    """Investment does not cover workers' saving, so the profit rate is negative."""
