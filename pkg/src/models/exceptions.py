"""
Exceptions raised by the knot algebra models.

Everything derives from KnotAlgError so callers (CLI, API) can catch one type and map it to an exit code or
an HTTP status. The ValueError mixins keep plain `except ValueError` handlers working.
"""


class KnotAlgError(Exception):
    """Base class for all domain errors."""


class DiagramError(KnotAlgError, ValueError):
    """Malformed or invalid knot diagram input."""


class UnknownBuiltinError(DiagramError, KeyError):
    """Requested builtin diagram name does not exist."""

    def __str__(self) -> str:
        # KeyError quotes its argument, keep the plain message
        return str(self.args[0]) if self.args else ""


class ScalarError(KnotAlgError, ValueError):
    """Field context mismatch, invalid modulus or unsupported scalar operation."""


class ScalarZeroDivisionError(ScalarError, ZeroDivisionError):
    """Inverse of zero requested."""


class AlgebraError(KnotAlgError, ValueError):
    """Invalid algebra construction or operation."""


class BudgetError(KnotAlgError, ValueError):
    """Search budgets must be positive."""


class ConfigError(KnotAlgError, ValueError):
    """Conflicting or malformed run configuration."""
