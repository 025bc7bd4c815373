"""Exception and warning types shared across the package."""


class InvalidInputError(ValueError):
    """A physical input is out of its valid domain (non-finite, wrong sign, ...)."""


class NumericError(RuntimeError):
    """A numerical routine failed to converge or returned garbage."""


class ExtractionError(RuntimeError):
    """A spectral feature needed by an estimator could not be located."""


class GeometryError(ValueError):
    """A field/orientation arrangement does not satisfy the scheme's geometry."""


class FormatError(ValueError):
    """An input file does not match the documented schema."""


class ConfigError(ValueError):
    """A scene configuration is missing a key or holds an invalid value."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


class ValidityRangeWarning(UserWarning):
    """Inputs left the regime in which transition strength tracks ODMR contrast."""
