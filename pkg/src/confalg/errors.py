"""Exception types shared across the workbench."""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for every error raised by this package."""


class RegistryError(WorkbenchError):
    """Unknown variable, conflicting registration, or mixed registries."""


class ParseError(WorkbenchError):
    """Malformed textual input, annotated with a position when known."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where += f"line {line}"
        if column is not None:
            where += (", " if where else "") + f"column {column}"
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line
        self.column = column


class DefinitionError(WorkbenchError):
    """Structurally invalid algebra or module data (foreign generators,
    missing or duplicated bracket entries, stray formal variables)."""


class BindingError(WorkbenchError):
    """Missing, duplicated, or undeclared parameter binding."""


class LabelError(WorkbenchError):
    """Annihilation-basis label incompatible with its generator's offset."""


class NonMonicDivisorError(WorkbenchError):
    """Polynomial division asked for with a divisor that is not monic in
    the division variable."""


class DivisibilityError(WorkbenchError):
    """A claimed submodule generator does not divide every generator action."""


class UnsupportedError(WorkbenchError):
    """Request outside the supported scope of an operation."""


class UnsupportedSystemError(UnsupportedError):
    """Polynomial system outside the shape the solver can triangularize.

    The offending equation is kept on the ``equation`` attribute and named in
    the message so callers can report it.
    """

    def __init__(self, message: str, equation=None):
        if equation is not None:
            message = f"{message}: {equation}"
        super().__init__(message)
        self.equation = equation


class DiscrepancyError(WorkbenchError):
    """A cross-validation pass disagreed with the primary computation.

    Raised instead of silently reconciling, so that the mismatch is surfaced
    with both sides attached to the message.
    """
