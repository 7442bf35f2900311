"""Exception types shared across the package."""


class PGraphError(Exception):
    """Base class for all package errors."""


class InstanceMismatch(PGraphError, ValueError):
    """Two group elements come from different group instances."""


class OrderError(PGraphError, ValueError):
    """An order-theoretic precondition failed (e.g. p is not below q)."""


class CompositionError(PGraphError, ValueError):
    """Two paths are not composable."""


class TruncationError(PGraphError):
    """A result lies outside the enumerated part of a truncated graph."""


class CapExceeded(PGraphError):
    """An enumeration grew past its configured cap."""


class FilterError(PGraphError, ValueError):
    """A path set violates the filter axioms or an operation's precondition."""


class LemmaViolation(PGraphError):
    """A search that a structural lemma guarantees to succeed came up empty."""


class BasisMismatch(PGraphError, ValueError):
    """Operators from different representations were combined."""


class NormError(PGraphError):
    """The operator norm computation did not converge."""


class SpecParseError(PGraphError):
    """A graph spec file could not be parsed."""

    def __init__(self, message, line=None, column=None, tokens=()):
        self.line = line
        self.column = column
        self.tokens = tuple(tokens)
        where = ""
        if line is not None:
            where = "line {}".format(line)
            if column is not None:
                where += ", column {}".format(column)
            where += ": "
        super().__init__(where + message)


class NotHereditary(PGraphError, ValueError):
    """An embedding of cones fails hereditariness or join preservation."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
