"""Exception types shared across the package."""


class SepwitnessError(Exception):
    """Base class for all sepwitness errors."""


class EmptyStateError(SepwitnessError):
    """An operation that needs a nonzero vector received the zero vector."""


class NotNormalizedError(SepwitnessError):
    """A state that must be unit-norm deviates beyond the allowed tolerance."""


class DuplicateInputError(SepwitnessError):
    """A game was asked to run on a list of inputs containing repeats."""


class InvalidStrategyError(SepwitnessError):
    """A finite strategy violates the POVM or normalization invariants."""


class OutOfRangeError(SepwitnessError):
    """A numeric argument lies outside its documented domain."""


class ConfigError(SepwitnessError):
    """An experiment configuration is malformed or inconsistent."""
