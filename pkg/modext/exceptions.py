"""Errors raised by the modext engine.

Every error carries the exit code used by the management commands, so a
command only has to translate a ``ModextError`` into a ``CommandError``.
"""

__all__ = [
    "CapExceeded",
    "DomainMismatch",
    "ModextError",
    "NonTransitive",
    "ScopeViolation",
    "SpecFileError",
    "TheoremViolation",
    "UnknownVertex",
]

EXIT_VERDICT_FALSE = 1
EXIT_INVALID_INPUT = 2
EXIT_CAP_EXCEEDED = 3
EXIT_THEOREM_VIOLATION = 4


class ModextError(Exception):
    """Base class for all errors raised by modext."""

    exit_code = EXIT_INVALID_INPUT


class ScopeViolation(ModextError, ValueError):
    """An object lies outside the category the operation is defined on."""


class DomainMismatch(ModextError, ValueError):
    """Two maps or an element and a group do not fit together."""


class UnknownVertex(ModextError, KeyError):
    """A vertex was requested that the digraph does not contain."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown vertex"


class SpecFileError(ModextError, ValueError):
    """A specification file could not be parsed or validated.

    Attributes:
        line: 1-based line number of the offending token.
        column: 1-based column number of the offending token.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)


class CapExceeded(ModextError):
    """An enumeration would exceed a configured cap."""

    exit_code = EXIT_CAP_EXCEEDED


class NonTransitive(ModextError):
    """Class equality failed to be transitive on a concrete triple."""

    exit_code = EXIT_THEOREM_VIOLATION


class TheoremViolation(ModextError):
    """A property that the theory guarantees failed on a concrete instance."""

    exit_code = EXIT_THEOREM_VIOLATION
