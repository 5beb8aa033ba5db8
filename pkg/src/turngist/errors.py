"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration value or flag combination. CLI maps this to exit code 2."""


class InputError(ValueError):
    """Invalid or inconsistent input data. CLI maps this to exit code 1."""
