"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GInverseError(Exception):
    """Base class for all errors raised by gdinverse."""


class FieldMismatch(GInverseError, TypeError):
    pass


class DivisionByZero(GInverseError, ZeroDivisionError):
    pass


class InfiniteField(GInverseError, ValueError):
    pass


class ShapeMismatch(GInverseError, ValueError):
    pass


class Singular(GInverseError, ValueError):
    pass


class NotInvariant(GInverseError, ValueError):
    """A supplied subspace is not mapped into itself."""


class NotNilpotent(GInverseError, ValueError):
    pass


class NotGDrazin(GInverseError, ValueError):
    pass


class StructureViolation(GInverseError, ValueError):
    pass


class BudgetExceeded(GInverseError, RuntimeError):
    pass


class CertificationFailure(GInverseError, AssertionError):
    """Brute force and parameterization disagree; ``witness`` is a matrix in
    one set and not the other (or ``None`` when only counts disagree)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(GInverseError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
