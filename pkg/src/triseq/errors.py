"""Exception hierarchy shared by every triseq module."""


class TriseqError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""

    exit_code = 2


class ZeroLeadComponent(TriseqError, ZeroDivisionError):
    pass


class OutOfDomain(TriseqError, ValueError):
    pass


class OutOfTriangle(OutOfDomain):
    pass


class IndexOutOfRange(TriseqError, IndexError):
    pass


class ZeroDigit(TriseqError, ValueError):
    pass


class Degenerate(TriseqError, ValueError):
    pass


class ConsistencyFailure(TriseqError, AssertionError):
    """Two independent computations disagreed. Always a bug, never bad input."""


class EmptyCell(ConsistencyFailure):
    pass


class NotFound(TriseqError, RuntimeError):
    exit_code = 4
