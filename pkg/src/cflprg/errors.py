"""Exception types shared across the workbench."""


class DimensionError(ValueError):
    """Operands that must have equal length do not."""


class BoundsError(IndexError):
    """Slice indices outside ``0 <= i <= j <= len(x)``."""


class AlphabetError(ValueError):
    """A symbol outside the automaton's or grammar's alphabet."""


class ConfigurationError(ValueError):
    """Malformed adversary/machine description or missing advice."""


class DomainError(ValueError):
    """Parameters outside an operation's stated domain."""


class ResourceError(RuntimeError):
    """An exhaustive sweep would exceed the configured budget."""


class CapExceeded(ResourceError):
    """A pushdown simulation hit its step or stack cap with live configurations.

    The outcome is indeterminate, which is not the same as a reject.
    """


class LemmaViolation(AssertionError):
    """A finitely checkable claim failed on a concrete instance."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class IdentityViolation(LemmaViolation):
    """The exact fooling/gap identity did not hold."""
